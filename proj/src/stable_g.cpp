#include "conint/stable_g.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conint {

namespace {
constexpr double kSeriesSwitch = 1e-4;  // |z - 1| below this uses the series
}

double stable_g(double z) {
    if (!(z > 0.0))
        throw std::domain_error("stable_g: z must be positive, got " + std::to_string(z));
    const double w = z - 1.0;
    if (std::abs(w) < kSeriesSwitch) {
        // 1 - w/2 + w^2/3 - w^3/4 + w^4/5; truncation ~ w^5/6 < 2e-21
        return 1.0 + w * (-0.5 + w * (1.0 / 3.0 + w * (-0.25 + w * 0.2)));
    }
    return std::log(z) / w;
}

double symmetric_log_ratio(double h0, double h1) {
    if (h0 == 0.0 || h1 == 0.0 || (h0 > 0.0) != (h1 > 0.0))
        throw std::domain_error("symmetric_log_ratio: arguments must be nonzero and of equal sign");
    if (h0 == h1) return 1.0 / h0;

    // Both branches below are invariant under h0 <-> h1:
    //  - m and u*u are computed from exactly commutative/negation-exact ops,
    //  - (log h1 - log h0)/(h1 - h0) maps to (-A)/(-B) under the swap.
    const double m = 0.5 * (h0 + h1);
    const double u = (h1 - h0) / (2.0 * m);
    if (std::abs(u) < 0.01) {
        // (log h1 - log h0)/(h1 - h0) = atanh(u)/(m*u) = (1/m) * sum u^{2k}/(2k+1)
        const double u2 = u * u;
        const double s =
            1.0 + u2 * (1.0 / 3.0 + u2 * (1.0 / 5.0 + u2 * (1.0 / 7.0 + u2 / 9.0)));
        return s / m;
    }
    return (std::log(std::abs(h1)) - std::log(std::abs(h0))) / (h1 - h0);
}

}  // namespace conint
