#pragma once

// Self-contained special-function kernels: modified Bessel I_k, Airy Ai,
// and log-gamma. Everything here is a pure function of its arguments.

namespace xx0 {

// Modified Bessel function of the first kind, I_{|k|}(t).
// Ascending power series for t <= 30, Miller backward recurrence
// (normalized by I_0 + 2*sum I_k = e^t) for larger t.
// Relative error <= 1e-12 for t <= 200. Throws std::domain_error for t < 0.
double bessel_i(int k, double t);

// Airy function Ai(x), absolute error <= 1e-10 on [-10, 12].
// Maclaurin series (long double accumulation) on [-7.5, 6.5],
// asymptotic expansions beyond the stitch points.
double airy_ai(double x);

// Derivative Ai'(x), same construction and accuracy class as airy_ai.
double airy_ai_prime(double x);

// log Gamma(x) for x > 0, relative error <= 1e-12 (Lanczos approximation).
// Throws std::domain_error for x <= 0.
double log_gamma(double x);

namespace detail {
// Exposed for overlap testing of the two Bessel evaluation routes.
double bessel_i_series(int k, double t);
double bessel_i_miller(int k, double t);
}  // namespace detail

}  // namespace xx0
