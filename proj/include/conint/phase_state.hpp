#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conint {

// Flat phase vector. Each system defines its own packing:
//   Lotka-Volterra   [x_1 .. x_n]                      populations
//   n-body           [q_1 .. q_n, p_1 .. p_n]          positions then momenta
//   planar vortices  [x_1 .. x_n, y_1 .. y_n]
//   sphere vortices  [x_1 y_1 z_1, ..., x_n y_n z_n]   unit 3-vectors
using PhaseState = std::vector<double>;

inline bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline void require_dim(const PhaseState& x, std::size_t dim, const char* who) {
    if (x.size() != dim)
        throw std::invalid_argument(std::string(who) + ": state has dimension " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(dim));
}

inline void require_finite(const PhaseState& x, const char* who) {
    if (!all_finite(x))
        throw std::invalid_argument(std::string(who) + ": state contains NaN/Inf");
}

// Thrown when two bodies or vortices come closer than the configured threshold.
class SingularityError : public std::domain_error {
public:
    SingularityError(const std::string& msg, std::size_t i, std::size_t j)
        : std::domain_error(msg), first(i), second(j) {}
    std::size_t first;
    std::size_t second;
};

}  // namespace conint
