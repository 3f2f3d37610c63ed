#pragma once

#include <cstddef>

namespace fracpont {

// Controls truncation of the Mittag-Leffler power series.
struct SeriesControl {
    double abs_tol = 1e-14;
    std::size_t max_terms = 400;
};

// Gamma function on the positive real axis, Lanczos approximation (g = 7, 9
// coefficients). Relative error <= 1e-12 on (0, 50]. Throws std::domain_error
// for x <= 0 and for x large enough to overflow a double (x > 171.6).
double gamma_fn(double x);

// Two-parameter Mittag-Leffler function E_{a1,a2}(t) = sum_k t^k / Gamma(a1*k + a2),
// summed directly with term magnitudes computed through std::lgamma.
//
// Requires a1 > 0, a2 > 0 and |t| <= 50 (domain_error otherwise). Throws
// NonConvergenceError if max_terms is reached before the next-term magnitude
// drops below abs_tol on the decaying side of the series. For t < 0 the series
// alternates; the achievable absolute accuracy is limited by
// eps * max_k |term_k|, which stays harmless for the |t| <= ~10 range used here.
double mittag_leffler(double a1, double a2, double t, const SeriesControl& ctrl = {});

} // namespace fracpont
