#pragma once

namespace conint {

// g(z) = log(z)/(z - 1), the divided difference of log in ratio form.
// g(1) = 1 (removable singularity).  Near z = 1 the direct quotient loses
// accuracy to cancellation, so |z - 1| < 1e-4 switches to the truncated
// series 1 - w/2 + w^2/3 - w^3/4 + w^4/5, w = z - 1; both branches agree to
// better than 1e-15 relative at the switch.
// Throws std::domain_error for z <= 0.
double stable_g(double z);

// Divided difference of log: (log h1 - log h0)/(h1 - h0), equal to
// (1/h0) * g(h1/h0) and to 1/h0 at h1 == h0.  Evaluated so the result is
// bitwise symmetric under swapping the arguments; this is the identity the
// symmetric schemes lean on.  Arguments must be nonzero and of equal sign.
double symmetric_log_ratio(double h0, double h1);

}  // namespace conint
