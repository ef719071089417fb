#include "xx0/phase.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "xx0/specfun.hpp"

namespace xx0 {

const char* region_name(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
        case Region::QP_I: return "QP-I";
        case Region::QP_II: return "QP-II";
    }
    return "?";
}

ScalingPair mu_sigma(int n_f, double t) {
    if (t <= 0) throw std::domain_error("mu_sigma: degenerate input t <= 0");
    if (n_f < 1) throw std::domain_error("mu_sigma: N_f >= 1");
    const double rnf = n_f;
    const double t13 = std::cbrt(t);
    if (rnf >= t) {
        return {rnf + t, t13 / std::cbrt(2.0)};
    }
    const double mu = 2 * std::sqrt(rnf * t);
    const double sigma = t13 / std::cbrt(4.0) *
                         std::cbrt(std::sqrt(rnf / t) + std::sqrt(t / rnf));
    return {mu, sigma};
}

double j_param(double tau, double n_inv) {
    if (tau <= 0) throw std::domain_error("j_param: tau > 0");
    if (tau <= 1.0) {
        return (n_inv - (tau + 1)) / (std::cbrt(tau) / std::cbrt(2.0));
    }
    const double st = std::sqrt(tau);
    return (n_inv - 2 * st) /
           (std::cbrt(tau) / std::cbrt(4.0) * std::cbrt(st + 1 / st));
}

double free_energy_gw_infinite(double tau) {
    if (tau <= 0) throw std::domain_error("free_energy_gw_infinite: tau > 0");
    if (tau <= 1.0) return tau * tau / 4;
    return tau - 0.75 - std::log(tau) / 2;
}

double free_energy_gw_finite(double tau, double n_inv) {
    if (tau <= 0 || n_inv <= 0)
        throw std::domain_error("free_energy_gw_finite: positive inputs only");
    const double base = free_energy_gw_infinite(tau);
    const double c2 = 1.0 / 12.0;
    if (tau <= 1.0) {
        if (n_inv >= tau + 1) return base;
        const double d = std::abs(n_inv - (tau + 1));
        return base - c2 / (tau / 2) * d * d * d;
    }
    const double st = std::sqrt(tau);
    if (n_inv >= 2 * st) return base;
    const double d = std::abs(n_inv - 2 * st);
    return base - c2 / (tau / 4 * (st + 1 / st)) * d * d * d;
}

double free_energy_qp_finite(double lambda, int n_f_ref) {
    if (lambda <= 0)
        throw std::domain_error("free_energy_qp_finite: lambda > 0");
    if (n_f_ref < 2)
        throw std::domain_error("free_energy_qp_finite: N_f_ref >= 2");
    double a = 0.0;
    for (int j = 1; j <= n_f_ref; ++j) a += log_gamma(1.0 + j);
    a /= static_cast<double>(n_f_ref) * n_f_ref;
    if (lambda >= 2.0) return a;
    const double d = std::abs(lambda - 2);
    return a - d * d * d / 3;
}

namespace {

// Distance from (tau0, n0) to the curve (a, c(a)) on a bracket, by golden
// section on the squared distance (the curves are smooth and convex here).
double curve_distance(double tau0, double n0, double a_lo, double a_hi,
                      const std::function<double(double)>& c) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1);
    auto d2 = [&](double a) {
        const double dn = c(a) - n0;
        return (a - tau0) * (a - tau0) + dn * dn;
    };
    double lo = a_lo, hi = a_hi;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = d2(x1), f2 = d2(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = d2(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = d2(x2);
        }
        if (hi - lo < 1e-12 * (1 + hi)) break;
    }
    return std::sqrt(d2(0.5 * (lo + hi)));
}

double gw_wall_distance(double tau, double n_inv) {
    // blue: n = tau + 1 on tau in (0, 1]; red: n = 2 sqrt(tau), tau >= 1;
    // green/black: the vertical segment tau = 1
    const double blue = curve_distance(tau, n_inv, 1e-9, 1.0,
                                       [](double a) { return a + 1; });
    const double red =
        curve_distance(tau, n_inv, 1.0, tau + n_inv + 10.0,
                       [](double a) { return 2 * std::sqrt(a); });
    const double vertical = std::abs(tau - 1.0);
    return std::min({blue, red, vertical});
}

}  // namespace

PhasePoint classify(double tau, double n_inv) {
    if (tau <= 0 || n_inv <= 0)
        throw std::domain_error("classify: positive inputs only");
    PhasePoint p;
    p.tau = tau;
    p.n_inv = n_inv;
    // wall points (ties) get the smaller region index
    if (tau <= 1.0) {
        p.region = (n_inv <= tau + 1) ? Region::I : Region::II;
    } else {
        p.region = (n_inv <= 2 * std::sqrt(tau)) ? Region::III : Region::IV;
    }
    p.free_energy = free_energy_gw_finite(tau, n_inv);
    p.wall_distance = gw_wall_distance(tau, n_inv);
    return p;
}

PhasePoint classify_qp(double lambda, int n_f_ref) {
    if (lambda <= 0) throw std::domain_error("classify_qp: lambda > 0");
    PhasePoint p;
    p.lambda = lambda;
    p.region = (lambda <= 2.0) ? Region::QP_I : Region::QP_II;
    p.free_energy = free_energy_qp_finite(lambda, n_f_ref);
    p.wall_distance = std::abs(lambda - 2);
    return p;
}

double boundary_hit_probability(const ModelParams& p, Model model,
                                const TWEvaluator& ev) {
    double x;
    if (model == Model::GW) {
        const ScalingPair ms = mu_sigma(p.n_f, p.t);
        x = (p.N - ms.mu) / ms.sigma;
    } else {
        const double rnf = p.n_f;
        x = (p.N - 2 * std::sqrt(rnf)) * std::pow(2.0, 2.0 / 3.0) *
            std::pow(rnf, 1.0 / 6.0);
    }
    return 1.0 - ev.cdf(x);
}

namespace {

// k-th one-sided derivative at 0 of f(u), sampled at u = side*i*h,
// i = 1..k+3 (never touching u = 0), with stencil weights solved from the
// Vandermonde moment conditions; leading error O(h^3).
double one_sided_deriv(const std::function<double(double)>& f, int k,
                       double h, int side) {
    const int m = k + 3;
    Eigen::MatrixXd v(m, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (int p = 0; p < m; ++p) {
        double fact = 1.0;
        for (int q = 1; q <= p; ++q) fact *= q;
        for (int i = 1; i <= m; ++i)
            v(p, i - 1) = std::pow(i * h, p) / fact;
        if (p == k) rhs(p) = 1.0;
    }
    const Eigen::VectorXd c = v.fullPivLu().solve(rhs);
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) acc += c(i - 1) * f(side * i * h);
    // mirroring the stencil flips the sign of odd derivatives
    return (side == -1 && k % 2 == 1) ? -acc : acc;
}

// Richardson-extrapolated one-sided derivative with error estimate.
void deriv_with_error(const std::function<double(double)>& f, int k, int side,
                      double* value, double* err) {
    const double h = 1e-2;
    const double d1 = one_sided_deriv(f, k, h, side);
    const double d2 = one_sided_deriv(f, k, h / 2, side);
    const double d3 = one_sided_deriv(f, k, h / 4, side);
    const double e1 = (8 * d2 - d1) / 7;  // O(h^3) leading order
    const double e2 = (8 * d3 - d2) / 7;
    *value = e2;
    *err = std::abs(e2 - e1) + 1e-9;
}

std::function<double(double)> wall_transversal(Wall wall) {
    switch (wall) {
        case Wall::TauOne_GW:
            return [](double u) { return free_energy_gw_infinite(1 + u); };
        case Wall::Blue_I_II:
            // cross at tau = 0.5 perpendicular-in-n to n = tau + 1
            return [](double u) { return free_energy_gw_finite(0.5, 1.5 + u); };
        case Wall::Green_II_IV:
            return [](double u) { return free_energy_gw_finite(1 + u, 3.0); };
        case Wall::Red_III_IV:
            return [](double u) { return free_energy_gw_finite(4.0, 4.0 + u); };
        case Wall::Black_I_III:
            return [](double u) { return free_energy_gw_finite(1 + u, 1.5); };
        case Wall::QP_wall:
            return [](double u) { return free_energy_qp_finite(2 + u, 32); };
    }
    throw std::logic_error("wall_transversal: unknown wall");
}

}  // namespace

TransitionReport transition_order(Wall wall) {
    const auto f = wall_transversal(wall);
    for (int k = 1; k <= 4; ++k) {
        double dp, ep, dm, em;
        deriv_with_error(f, k, +1, &dp, &ep);
        deriv_with_error(f, k, -1, &dm, &em);
        const double jump = dp - dm;
        const double err = ep + em;
        if (std::abs(jump) > 10 * err) return {k, jump, err};
    }
    throw std::runtime_error(
        "transition_order: no conclusive jump through order 4");
}

}  // namespace xx0
