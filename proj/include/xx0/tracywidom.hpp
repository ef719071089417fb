#pragma once

#include <vector>

// Tracy-Widom (GUE) distribution F(x) via the Painleve II representation
// F(s) = exp(-int_s^inf (x-s) q(x)^2 dx), where q is the Hastings-McLeod
// solution of q'' = s q + 2 q^3 with q ~ Ai at +inf, plus an independent
// Fredholm-determinant (Airy kernel) oracle and the tail expansions.

namespace xx0 {

struct TailConstants {
    double c1 = 4.0 / 3.0;  // right-tail exponent coefficient
    double c2 = 1.0 / 12.0; // left-tail exponent coefficient
    double c3;              // left-tail prefactor (fitted numerically)
};

class TWEvaluator {
  public:
    // Solves the Hastings-McLeod two-point problem on [grid_lo, grid_hi].
    // Boundary data: q(grid_hi) = Ai(grid_hi) (Eq. for q ~ -Ai holds up to
    // the sign, which F = F(q^2) cannot see); the left end is pinned to the
    // q^2 ~ -s/2 asymptote. A damped Newton relaxation on a tridiagonal
    // second-order scheme is solved at step and step/2 and Richardson
    // extrapolated; naive downward marching is exponentially unstable and
    // cannot reach grid_lo in floating point.
    TWEvaluator(double grid_lo = -10.0, double grid_hi = 8.0,
                double step = 0.0025);

    double grid_lo() const { return lo_; }
    double grid_hi() const { return hi_; }
    double step() const { return h_; }

    // Hastings-McLeod q(s); cubic Hermite interpolation between nodes.
    // Outside the grid: Ai(s) above, sqrt(-s/2) asymptote below.
    double q(double s) const;

    // F(x). Delegates to the tail expansions outside [grid_lo, grid_hi].
    double cdf(double x) const;

    const TailConstants& tails() const { return tails_; }

  private:
    double lo_, hi_, h_;
    // I = int (x-s)q^2, J = int q^2; negbigj_ caches -J (= dI/ds)
    std::vector<double> s_, q_, qp_, bigi_, bigj_, negbigj_;
    TailConstants tails_;

    double interp(const std::vector<double>& y, const std::vector<double>& yp,
                  double x) const;
};

// Convenience wrapper matching the operation-style interface.
TWEvaluator solve_hastings_mcleod(double grid_lo, double grid_hi, double step);

double tw_cdf(double x, const TWEvaluator& ev);

// Independent oracle: Nystrom (Gauss-Legendre) Fredholm determinant of the
// Airy kernel on (x, inf), with node-doubling convergence to 1e-8.
double tw_cdf_fredholm(double x, int quad_order = 40);

// Tail expansions; valid for |x| >= 3 (domain error inside).
double tw_right_tail(double x);
double tw_left_tail(double x, const TailConstants& tc);

// Solve prefactor * exp(-|x0|^3/12)/|x0|^(1/8) * (1 - 3*2^-6 |x0|^-3) = f0.
double fit_left_tail_prefactor(double x0, double f0);

// Gauss-Legendre nodes/weights on [-1, 1] (Newton iteration on P_n).
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace xx0
