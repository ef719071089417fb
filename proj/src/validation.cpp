#include "xx0/validation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xx0/chainoracle.hpp"
#include "xx0/detcore.hpp"
#include "xx0/nibmsim.hpp"
#include "xx0/partition.hpp"
#include "xx0/phase.hpp"
#include "xx0/specfun.hpp"
#include "xx0/tracywidom.hpp"

namespace xx0 {

namespace {

using json = nlohmann::ordered_json;

const TWEvaluator& shared_ev() {
    static TWEvaluator ev;
    return ev;
}

// 1. Painleve II CDF vs the Fredholm-determinant oracle.
CriterionResult crit_tw_cross_validation() {
    CriterionResult r{1, "tw_painleve_vs_fredholm", true, json::object()};
    json rows = json::array();
    for (double x : {-4.0, -2.0, 0.0, 2.0, 4.0}) {
        const double a = shared_ev().cdf(x);
        const double b = tw_cdf_fredholm(x);
        const double gap = std::abs(a - b);
        rows.push_back({{"x", x}, {"painleve", a}, {"fredholm", b}, {"gap", gap}});
        if (gap > 1e-6) r.passed = false;
    }
    r.details["tolerance"] = 1e-6;
    r.details["rows"] = rows;
    return r;
}

// 2. Tail expansions against the CDF.
CriterionResult crit_tw_tails() {
    CriterionResult r{2, "tw_tail_expansions", true, json::object()};
    const double right_gap = std::abs(shared_ev().cdf(6.0) - tw_right_tail(6.0));
    const double cdf_m8 = shared_ev().cdf(-8.0);
    const double left_rel =
        std::abs(tw_left_tail(-8.0, shared_ev().tails()) - cdf_m8) / cdf_m8;
    r.details["right_gap_at_6"] = right_gap;
    r.details["left_rel_diff_at_-8"] = left_rel;
    r.details["fitted_prefactor"] = shared_ev().tails().c3;
    r.details["reference_prefactor_2^(1/24)e^(zeta'(-1))"] = 0.87237141495435;
    if (right_gap > 1e-9 || left_rel > 0.02) r.passed = false;
    return r;
}

// 3. Toeplitz determinant vs direct torus quadrature.
CriterionResult crit_determinant_vs_quadrature() {
    CriterionResult r{3, "determinant_vs_torus_quadrature", true, json::object()};
    json rows = json::array();
    for (int n_f : {1, 2, 3}) {
        for (double t : {0.5, 1.0, 2.0}) {
            ModelParams p;
            p.n_f = n_f;
            p.t = t;
            const double det = std::exp(partition_gw_infinite(p).log_abs);
            const double quad = correlation_quadrature({}, {}, n_f, t);
            const double gap = std::abs(det - quad);
            rows.push_back({{"n_f", n_f}, {"t", t}, {"det", det},
                            {"quad", quad}, {"gap", gap}});
            if (gap > 1e-7) r.passed = false;
        }
    }
    r.details["tolerance"] = 1e-7;
    r.details["rows"] = rows;
    return r;
}

// 4. Determinant vs exact sector evolution on a 24-site periodic chain.
CriterionResult crit_determinant_vs_chain() {
    CriterionResult r{4, "determinant_vs_chain_evolution", true, json::object()};
    json rows = json::array();
    for (int n_f : {1, 2, 3}) {
        for (double t : {0.5, 1.0, 2.0}) {
            ModelParams p;
            p.N = 24;
            p.n_f = n_f;
            p.t = t;
            const double chain = evolve_partition_exact(p, true);
            const double det = std::exp(partition_gw_infinite(p).log_abs);
            const double gap = std::abs(chain - det);
            rows.push_back({{"n_f", n_f}, {"t", t}, {"chain", chain},
                            {"det", det}, {"gap", gap}});
            if (gap > 1e-5) r.passed = false;
        }
    }
    r.details["tolerance"] = 1e-5;
    r.details["rows"] = rows;
    return r;
}

// 5. Infinite free energy: determinant gap shrinks with N_f.
CriterionResult crit_infinite_free_energy() {
    CriterionResult r{5, "free_energy_convergence", true, json::object()};
    json rows = json::array();
    for (double tau : {0.5, 2.0}) {
        const double f_ref = free_energy_gw_infinite(tau);
        const double g32 =
            std::abs(hp::toeplitz_gw_free_energy_gap(tau * 32, 32, f_ref));
        const double g64 =
            std::abs(hp::toeplitz_gw_free_energy_gap(tau * 64, 64, f_ref));
        rows.push_back({{"tau", tau}, {"gap_nf32", g32}, {"gap_nf64", g64}});
        if (g64 > 0.02 || g64 >= g32) r.passed = false;
    }
    r.details["tolerance_at_nf64"] = 0.02;
    r.details["rows"] = rows;
    return r;
}

// 6. Third-order transition at tau = 1 in the unconstrained model.
CriterionResult crit_third_order_transition() {
    CriterionResult r{6, "third_order_transition", true, json::object()};
    const TransitionReport tr = transition_order(Wall::TauOne_GW);
    r.details["order"] = tr.order;
    r.details["third_derivative_jump"] = tr.jump;
    r.details["jump_error_estimate"] = tr.err;
    // continuity of F, F', F'' at tau = 1 from the closed forms
    const double h = 1e-4;
    auto f = [](double tau) { return free_energy_gw_infinite(tau); };
    const double d1l = (f(1 - h / 2) - f(1 - 3 * h / 2)) / h;
    const double d1r = (f(1 + 3 * h / 2) - f(1 + h / 2)) / h;
    const double d2l = (f(1 - 3 * h) - 2 * f(1 - 2 * h) + f(1 - h)) / (h * h);
    const double d2r = (f(1 + h) - 2 * f(1 + 2 * h) + f(1 + 3 * h)) / (h * h);
    const double c0 = std::abs(f(1 - 1e-9) - f(1 + 1e-9));
    const double c1 = std::abs(d1l - d1r);
    const double c2 = std::abs(d2l - d2r);
    r.details["f_jump"] = c0;
    r.details["f1_jump"] = c1;
    r.details["f2_jump"] = c2;
    r.passed = tr.order == 3 && std::abs(tr.jump + 1.0) <= 0.05 &&
               c0 <= 1e-8 && c1 <= 1e-3 && c2 <= 1e-2;
    return r;
}

// 7. Finite-model wall orders and exact wall classification.
CriterionResult crit_finite_model_walls() {
    CriterionResult r{7, "finite_model_walls", true, json::object()};
    const TransitionReport blue = transition_order(Wall::Blue_I_II);
    const TransitionReport green = transition_order(Wall::Green_II_IV);
    const TransitionReport red = transition_order(Wall::Red_III_IV);
    const TransitionReport black = transition_order(Wall::Black_I_III);
    r.details["blue_order"] = blue.order;
    r.details["green_order"] = green.order;
    r.details["red_order"] = red.order;
    r.details["black_order"] = black.order;
    bool ok = blue.order == 3 && green.order == 3 && red.order == 3 &&
              black.order == 2;
    // 10^3 analytic wall points: classification residual is zero
    double max_resid = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double tau = (i + 1) / 500.0;  // blue wall, tau in (0, 1]
        const PhasePoint p = classify(tau, tau + 1);
        max_resid = std::max(max_resid, p.wall_distance);
        if (p.region != Region::I) ok = false;
    }
    for (int i = 0; i < 500; ++i) {
        // red wall, tau in (1, 5]; tau = 1 itself is the four-region corner
        // where the tie rule assigns region I
        const double tau = 1.0 + 4.0 * (i + 1) / 500.0;
        const PhasePoint p = classify(tau, 2 * std::sqrt(tau));
        max_resid = std::max(max_resid, p.wall_distance);
        if (p.region != Region::III) ok = false;
    }
    r.details["max_wall_residual"] = max_resid;
    if (max_resid > 1e-9) ok = false;
    r.passed = ok;
    return r;
}

// 8. Ratio to Tracy-Widom converges along tau = 2, x_target = 0.
CriterionResult crit_ratio_to_tw() {
    CriterionResult r{8, "ratio_to_tracy_widom", true, json::object()};
    json rows = json::array();
    double prev_gap = -1.0;
    double last_gap = 0.0;
    for (int n_f : {8, 16, 32}) {
        ModelParams p;
        p.n_f = n_f;
        p.t = 2.0 * n_f;
        const ScalingPair ms = mu_sigma(n_f, p.t);
        p.N = static_cast<int>(std::lround(ms.mu));
        const RatioReport rep = ratio_to_tw(p, Model::GW, shared_ev());
        rows.push_back({{"n_f", n_f}, {"N", p.N}, {"x", rep.x},
                        {"ratio", rep.ratio}, {"F_of_x", rep.f_of_x},
                        {"abs_gap", rep.abs_gap}});
        if (prev_gap >= 0.0 && rep.abs_gap > 1.2 * prev_gap) r.passed = false;
        prev_gap = rep.abs_gap;
        last_gap = rep.abs_gap;
    }
    if (last_gap > 0.05) r.passed = false;
    r.details["monotone_slack"] = 0.2;
    r.details["final_tolerance"] = 0.05;
    r.details["rows"] = rows;
    return r;
}

// 9. Selberg identity for the Gaussian Hankel determinant; QP wall gap.
CriterionResult crit_selberg() {
    CriterionResult r{9, "selberg_identity", true, json::object()};
    json rows = json::array();
    for (int n = 1; n <= 10; ++n) {
        const int n_f = n;
        const double det = hp::hankel_gauss_logdet(n_f, n).log_abs;
        // closed form: (n/2) log(2 pi) - (n^2/2) log(2 n_f) + sum log Gamma
        double closed = 0.5 * n * std::log(2 * M_PI) -
                        0.5 * n * n * std::log(2.0 * n_f);
        for (int j = 1; j <= n - 1; ++j) closed += log_gamma(1.0 + j);
        const double gap = std::abs(det - closed);
        rows.push_back({{"n", n}, {"det", det}, {"closed_form", closed},
                        {"gap", gap}});
        if (gap > 1e-8) r.passed = false;
    }
    const double wall_gap =
        free_energy_qp_finite(1.0, 32) - free_energy_qp_finite(2.0, 32);
    r.details["qp_wall_difference"] = wall_gap;
    if (std::abs(wall_gap + 1.0 / 3.0) > 1e-14) r.passed = false;
    r.details["tolerance"] = 1e-8;
    r.details["rows"] = rows;
    return r;
}

// 10. Monte Carlo width CDF vs the exact contour-integral formula.
CriterionResult crit_monte_carlo(std::uint64_t seed) {
    CriterionResult r{10, "monte_carlo_vs_determinant", true, json::object()};
    Rng rng(seed);
    const std::vector<int> ns = {3, 4, 5, 6, 7};
    const auto est = empirical_width_cdf(3, 3.0, ns, 100000, rng);
    json rows = json::array();
    for (const WidthEstimate& e : est) {
        const double exact = width_probability_exact(3, 3.0, e.N);
        const double dev = std::abs(e.p_hat - exact);
        const double lim = 3 * std::max(e.se, 1e-12);
        rows.push_back({{"N", e.N}, {"p_hat", e.p_hat}, {"se", e.se},
                        {"exact", exact}, {"deviation", dev}});
        if (dev > lim) r.passed = false;
    }
    r.details["seed"] = seed;
    r.details["samples"] = 100000;
    r.details["rows"] = rows;
    return r;
}

// 11. Boundary-hit probability saturates to the 0/1 table.
CriterionResult crit_boundary_hit() {
    CriterionResult r{11, "boundary_hit_limits", true, json::object()};
    ModelParams p;
    p.n_f = 32;
    p.t = 32.0;
    const ScalingPair ms = mu_sigma(p.n_f, p.t);
    p.N = static_cast<int>(std::ceil(1.5 * ms.mu));
    const double p_hi = boundary_hit_probability(p, Model::GW, shared_ev());
    const int n_hi = p.N;
    p.N = static_cast<int>(std::floor(0.8 * ms.mu));
    const double p_lo = boundary_hit_probability(p, Model::GW, shared_ev());
    r.details["mu"] = ms.mu;
    r.details["N_high"] = n_hi;
    r.details["p_at_1.5mu"] = p_hi;
    r.details["N_low"] = p.N;
    r.details["p_at_0.8mu"] = p_lo;
    r.passed = p_hi <= 0.01 && p_lo >= 0.99;
    return r;
}

// 12. Schur-weighted quadrature vs exact chain correlation; tableau count.
CriterionResult crit_schur_correlation() {
    CriterionResult r{12, "schur_correlation_consistency", true, json::object()};
    const double quad = correlation_quadrature({1}, {1}, 1, 1.0);
    const double chain = correlation_exact({20}, {20}, 40, 1.0, false);
    const double gap = std::abs(quad - chain);
    r.details["quadrature"] = quad;
    r.details["chain"] = chain;
    r.details["gap"] = gap;
    const double s21 =
        schur_poly({2, 1}, {std::complex<double>(1.0, 0.0),
                            std::complex<double>(1.0, 0.0),
                            std::complex<double>(1.0, 0.0)})
            .real();
    r.details["schur_21_at_111"] = s21;
    r.passed = gap <= 1e-4 && std::abs(s21 - 8.0) <= 1e-3;
    return r;
}

}  // namespace

std::vector<CriterionResult> run_criteria(const std::string& suite,
                                          std::uint64_t seed) {
    std::vector<int> ids;
    if (suite == "tw") {
        ids = {1, 2};
    } else if (suite == "oracle") {
        ids = {3, 4, 5, 6, 7, 9, 11, 12};
    } else if (suite == "mc") {
        ids = {10};
    } else if (suite == "all") {
        ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    } else {
        throw std::invalid_argument("run_criteria: unknown suite " + suite);
    }
    // criterion 8 exercises the ratio contract and belongs to the full run
    if (suite == "oracle") ids.push_back(8);
    std::sort(ids.begin(), ids.end());
    std::vector<CriterionResult> out;
    for (int id : ids) {
        switch (id) {
            case 1: out.push_back(crit_tw_cross_validation()); break;
            case 2: out.push_back(crit_tw_tails()); break;
            case 3: out.push_back(crit_determinant_vs_quadrature()); break;
            case 4: out.push_back(crit_determinant_vs_chain()); break;
            case 5: out.push_back(crit_infinite_free_energy()); break;
            case 6: out.push_back(crit_third_order_transition()); break;
            case 7: out.push_back(crit_finite_model_walls()); break;
            case 8: out.push_back(crit_ratio_to_tw()); break;
            case 9: out.push_back(crit_selberg()); break;
            case 10: out.push_back(crit_monte_carlo(seed)); break;
            case 11: out.push_back(crit_boundary_hit()); break;
            case 12: out.push_back(crit_schur_correlation()); break;
        }
    }
    return out;
}

nlohmann::ordered_json validation_report(const std::string& suite,
                                         std::uint64_t seed) {
    const auto results = run_criteria(suite, seed);
    nlohmann::ordered_json rep;
    rep["suite"] = suite;
    rep["seed"] = seed;
    bool all = true;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CriterionResult& c : results) {
        nlohmann::ordered_json j;
        j["id"] = c.id;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["details"] = c.details;
        arr.push_back(j);
        all = all && c.passed;
    }
    rep["criteria"] = arr;
    rep["all_passed"] = all;
    return rep;
}

}  // namespace xx0
