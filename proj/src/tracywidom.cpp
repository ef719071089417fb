#include "xx0/tracywidom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "xx0/specfun.hpp"

namespace xx0 {

namespace {

// Left asymptote of the Hastings-McLeod solution,
// q(s) = sqrt(-s/2) (1 + s^-3/8 - (73/128) s^-6 + (10657/1024) s^-9 + ...).
double hm_left_asymptote(double s) {
    const double i3 = 1.0 / (s * s * s);
    return std::sqrt(-s / 2) *
           (1.0 + i3 / 8 - 73.0 / 128 * i3 * i3 +
            10657.0 / 1024 * i3 * i3 * i3);
}

// One Newton relaxation solve of q'' = s q + 2 q^3 on a uniform grid with
// Dirichlet data at both ends. Returns q at the n+1 nodes.
std::vector<double> newton_bvp(double lo, double hi, int n, double q_lo,
                               double q_hi) {
    const double h = (hi - lo) / n;
    std::vector<double> s(n + 1), q(n + 1);
    for (int i = 0; i <= n; ++i) {
        s[i] = lo + i * h;
        // initial guess: smooth positive blend of Ai and the left asymptote
        const double ai = airy_ai(std::min(s[i], 12.0));
        q[i] = std::sqrt(ai * ai + std::max(0.0, -s[i]) / 2);
    }
    q[0] = q_lo;
    q[n] = q_hi;

    const double ih2 = 1.0 / (h * h);
    std::vector<double> res(n + 1), diag(n + 1), rhs(n + 1);
    double prev_norm = 1e300;
    for (int it = 0; it < 100; ++it) {
        double norm = 0.0;
        for (int i = 1; i < n; ++i) {
            res[i] = (q[i - 1] - 2 * q[i] + q[i + 1]) * ih2 - s[i] * q[i] -
                     2 * q[i] * q[i] * q[i];
            norm = std::max(norm, std::abs(res[i]));
        }
        if (norm < 1e-9 || (norm < 1e-6 && norm >= prev_norm * 0.5)) break;
        if (it == 99 || norm > 1e6)
            throw std::runtime_error(
                "hastings-mcleod relaxation failed to converge (divergence)");
        prev_norm = norm;
        // Thomas solve of the tridiagonal Newton system J dq = -res
        for (int i = 1; i < n; ++i) {
            diag[i] = -2 * ih2 - s[i] - 6 * q[i] * q[i];
            rhs[i] = -res[i];
        }
        for (int i = 2; i < n; ++i) {
            const double m = ih2 / diag[i - 1];
            diag[i] -= m * ih2;
            rhs[i] -= m * rhs[i - 1];
        }
        std::vector<double> dq(n + 1, 0.0);
        dq[n - 1] = rhs[n - 1] / diag[n - 1];
        for (int i = n - 2; i >= 1; --i)
            dq[i] = (rhs[i] - ih2 * dq[i + 1]) / diag[i];
        double scale = 1.0;  // damp steps that would push q negative/huge
        for (int i = 1; i < n; ++i) {
            if (std::abs(dq[i]) > 1.0) scale = std::min(scale, 1.0 / std::abs(dq[i]));
        }
        for (int i = 1; i < n; ++i) q[i] += scale * dq[i];
    }
    return q;
}

}  // namespace

TWEvaluator::TWEvaluator(double grid_lo, double grid_hi, double step) {
    if (grid_hi < 6.0)
        throw std::domain_error("TWEvaluator: grid_hi must be >= 6");
    if (grid_lo < -10.0)
        throw std::domain_error("TWEvaluator: grid_lo must be >= -10");
    if (step <= 0.0 || step > 0.005)
        throw std::domain_error("TWEvaluator: require 0 < step <= 0.005");
    lo_ = grid_lo;
    hi_ = grid_hi;
    const int n = std::max(4, static_cast<int>(std::lround((hi_ - lo_) / step)));
    h_ = (hi_ - lo_) / n;

    const double q_lo = hm_left_asymptote(lo_);
    const double q_hi = airy_ai(hi_);
    const std::vector<double> qc = newton_bvp(lo_, hi_, n, q_lo, q_hi);
    const std::vector<double> qf = newton_bvp(lo_, hi_, 2 * n, q_lo, q_hi);

    // Richardson verification at half step: the second-order scheme must
    // show the expected h^2 consistency or the step was too large.
    double disc = 0.0;
    for (int i = 0; i <= n; ++i)
        disc = std::max(disc, std::abs(qc[i] - qf[2 * i]));
    if (disc > 1e-6)
        throw std::runtime_error(
            "hastings-mcleod half-step verification failed (step too large)");

    // Extrapolated O(h^4) solution on the coarse grid.
    s_.resize(n + 1);
    q_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        s_[i] = lo_ + i * h_;
        q_[i] = (4 * qf[2 * i] - qc[i]) / 3;
    }

    // q' by fourth-order central differences (one-sided at the ends via the
    // ODE-consistent cubic fit is unnecessary at this accuracy).
    qp_.resize(n + 1);
    for (int i = 2; i <= n - 2; ++i)
        qp_[i] = (q_[i - 2] - 8 * q_[i - 1] + 8 * q_[i + 1] - q_[i + 2]) /
                 (12 * h_);
    qp_[0] = (-3 * q_[0] + 4 * q_[1] - q_[2]) / (2 * h_);
    qp_[1] = (q_[2] - q_[0]) / (2 * h_);
    qp_[n - 1] = (q_[n] - q_[n - 2]) / (2 * h_);
    qp_[n] = airy_ai_prime(hi_);

    // Accumulate J = int_s^inf q^2 and I = int_s^inf (x-s) q^2 downward.
    // Tail contributions beyond grid_hi from the Airy closed forms
    // J_tail = Ai'^2 - s Ai^2, I_tail = (2 s^2 Ai^2 - 2 s Ai'^2 - Ai Ai')/3.
    bigj_.resize(n + 1);
    bigi_.resize(n + 1);
    {
        const double a = airy_ai(hi_), ap = airy_ai_prime(hi_);
        bigj_[n] = ap * ap - hi_ * a * a;
        bigi_[n] = (2 * hi_ * hi_ * a * a - 2 * hi_ * ap * ap - a * ap) / 3;
    }
    for (int i = n - 1; i >= 0; --i) {
        const double f0 = q_[i] * q_[i], f1 = q_[i + 1] * q_[i + 1];
        const double fp0 = 2 * q_[i] * qp_[i], fp1 = 2 * q_[i + 1] * qp_[i + 1];
        // Hermite (corrected trapezoid) quadrature, O(h^5) per interval
        bigj_[i] = bigj_[i + 1] + h_ / 2 * (f0 + f1) +
                   h_ * h_ / 12 * (fp0 - fp1);
        // I' = -J with J' = -q^2
        bigi_[i] = bigi_[i + 1] + h_ / 2 * (bigj_[i] + bigj_[i + 1]) +
                   h_ * h_ / 12 * (-f0 + f1);
    }

    negbigj_.resize(n + 1);
    for (int i = 0; i <= n; ++i) negbigj_[i] = -bigj_[i];

    // Fit the left-tail prefactor at the lowest usable point.
    const double x0 = std::max(lo_, -8.0);
    tails_.c3 = fit_left_tail_prefactor(x0, cdf(x0));
}

double TWEvaluator::interp(const std::vector<double>& y,
                           const std::vector<double>& yp, double x) const {
    const int n = static_cast<int>(s_.size()) - 1;
    int i = static_cast<int>((x - lo_) / h_);
    i = std::clamp(i, 0, n - 1);
    const double u = (x - s_[i]) / h_;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    return h00 * y[i] + h10 * h_ * yp[i] + h01 * y[i + 1] +
           h11 * h_ * yp[i + 1];
}

double TWEvaluator::q(double s) const {
    if (s > hi_) return airy_ai(s);
    if (s < lo_) return hm_left_asymptote(s);
    return interp(q_, qp_, s);
}

double TWEvaluator::cdf(double x) const {
    if (x > hi_) return tw_right_tail(x);
    if (x < lo_) return tw_left_tail(x, tails_);
    return std::exp(-interp(bigi_, negbigj_, x));  // dI/ds = -J
}

TWEvaluator solve_hastings_mcleod(double grid_lo, double grid_hi,
                                  double step) {
    return TWEvaluator(grid_lo, grid_hi, step);
}

double tw_cdf(double x, const TWEvaluator& ev) { return ev.cdf(x); }

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n / 2 + n % 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1 - x * x) * pp * pp);
    }
}

namespace {

// Airy kernel K(a,b) = (Ai(a)Ai'(b) - Ai'(a)Ai(b))/(a-b),
// diagonal limit Ai'(a)^2 - a Ai(a)^2.
double airy_kernel(double a, double b) {
    if (std::abs(a - b) < 1e-7) {
        const double m = (a + b) / 2;
        const double ai = airy_ai(m), ap = airy_ai_prime(m);
        return ap * ap - m * ai * ai;
    }
    return (airy_ai(a) * airy_ai_prime(b) - airy_ai_prime(a) * airy_ai(b)) /
           (a - b);
}

double fredholm_once(double x, int m) {
    // Nystrom on [x, b] with b far enough that Ai^2 has decayed
    const double b = std::max(x + 24.0, 16.0);
    std::vector<double> t, w;
    gauss_legendre(m, t, w);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
    std::vector<double> a(m), sw(m);
    for (int i = 0; i < m; ++i) {
        a[i] = x + (b - x) * (t[i] + 1) / 2;
        sw[i] = std::sqrt(w[i] * (b - x) / 2);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            A(i, j) -= sw[i] * sw[j] * airy_kernel(a[i], a[j]);
    return A.partialPivLu().determinant();
}

}  // namespace

double tw_cdf_fredholm(double x, int quad_order) {
    if (quad_order < 20)
        throw std::domain_error("tw_cdf_fredholm: quad_order must be >= 20");
    double prev = fredholm_once(x, quad_order);
    for (int d = 0; d < 3; ++d) {
        quad_order *= 2;
        const double cur = fredholm_once(x, quad_order);
        if (std::abs(cur - prev) < 1e-8) return cur;
        prev = cur;
    }
    throw std::runtime_error("tw_cdf_fredholm: node doubling did not converge");
}

double tw_right_tail(double x) {
    if (x < 3.0)
        throw std::domain_error("tw_right_tail: requires x >= 3");
    const double x32 = std::pow(x, 1.5);
    return 1.0 - std::exp(-4.0 / 3.0 * x32) / (32 * M_PI * x32) *
                     (1.0 - 35.0 / (24 * x32));
}

double tw_left_tail(double x, const TailConstants& tc) {
    if (x > -3.0)
        throw std::domain_error("tw_left_tail: requires x <= -3");
    const double ax = -x;
    return tc.c3 * std::exp(-ax * ax * ax / 12) / std::pow(ax, 0.125) *
           (1.0 - 3.0 / (64 * ax * ax * ax));
}

double fit_left_tail_prefactor(double x0, double f0) {
    const double ax = -x0;
    const double shape = std::exp(-ax * ax * ax / 12) / std::pow(ax, 0.125) *
                         (1.0 - 3.0 / (64 * ax * ax * ax));
    return f0 / shape;
}

}  // namespace xx0
