#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xx0/phase.hpp"

using namespace xx0;

TEST_CASE("mu_sigma branches") {
    const ScalingPair a = mu_sigma(4, 2.0);  // N_f >= t branch
    CHECK(a.mu == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(a.sigma == doctest::Approx(1.0).epsilon(1e-14));
    const ScalingPair b = mu_sigma(1, 1.0);  // boundary of the branch
    CHECK(b.mu == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(b.sigma == doctest::Approx(std::pow(2.0, -1.0 / 3)).epsilon(1e-14));
    const ScalingPair c = mu_sigma(1, 4.0);  // N_f < t branch
    CHECK(c.mu == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(c.sigma ==
          doctest::Approx(std::cbrt(4.0) / std::cbrt(4.0) * std::cbrt(2.5))
              .epsilon(1e-14));
    CHECK_THROWS_AS(mu_sigma(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(mu_sigma(0, 1.0), std::domain_error);
}

TEST_CASE("j_param values and branch continuity") {
    CHECK(j_param(0.5, 2.0) ==
          doctest::Approx(0.5 * std::cbrt(4.0)).epsilon(1e-13));
    CHECK(j_param(1.0, 2.0) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    // the two branches agree at tau = 1
    CHECK(j_param(1.0 - 1e-9, 3.0) ==
          doctest::Approx(j_param(1.0 + 1e-9, 3.0)).epsilon(1e-6));
    // sign convention: negative below the critical curve
    CHECK(j_param(0.5, 1.0) < 0.0);
    CHECK(j_param(4.0, 5.0) > 0.0);
    CHECK(j_param(4.0, 3.0) < 0.0);
}

TEST_CASE("closed-form free energies") {
    CHECK(free_energy_gw_infinite(0.5) == doctest::Approx(1.0 / 16).epsilon(1e-15));
    CHECK(free_energy_gw_infinite(1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(free_energy_gw_infinite(2.0) ==
          doctest::Approx(1.25 - std::log(2.0) / 2).epsilon(1e-15));
    // continuity at tau = 1: the two-sided difference is h*F' + O(h^3)
    const double h = 1e-6;
    CHECK(free_energy_gw_infinite(1 + h) - free_energy_gw_infinite(1 - h) ==
          doctest::Approx(h).epsilon(1e-6));
    // finite model: above the wall it is the infinite value
    CHECK(free_energy_gw_finite(0.5, 2.0) == free_energy_gw_infinite(0.5));
    CHECK(free_energy_gw_finite(4.0, 5.0) == free_energy_gw_infinite(4.0));
    // below the blue wall at (0.5, 1.0): cubic depletion 1/24
    CHECK(free_energy_gw_finite(0.5, 1.0) ==
          doctest::Approx(1.0 / 16 - 1.0 / 24).epsilon(1e-14));
    // depletion is continuous at the wall
    CHECK(free_energy_gw_finite(0.5, 1.5 - 1e-8) ==
          doctest::Approx(free_energy_gw_finite(0.5, 1.5)).epsilon(1e-12));
    // QP: wall difference is prefactor-independent
    const double d32 = free_energy_qp_finite(1.0, 32) - free_energy_qp_finite(2.0, 32);
    const double d64 = free_energy_qp_finite(1.0, 64) - free_energy_qp_finite(2.0, 64);
    CHECK(d32 == doctest::Approx(-1.0 / 3).epsilon(1e-14));
    CHECK(d64 == doctest::Approx(-1.0 / 3).epsilon(1e-14));
}

TEST_CASE("classify regions, ties, wall distance") {
    CHECK(classify(0.5, 1.0).region == Region::I);
    CHECK(classify(0.5, 2.0).region == Region::II);
    CHECK(classify(4.0, 3.0).region == Region::III);
    CHECK(classify(2.0, 4.0).region == Region::IV);
    // tie on the blue wall resolves to the smaller index
    CHECK(classify(0.5, 1.5).region == Region::I);
    CHECK(classify(4.0, 4.0).region == Region::III);
    CHECK(classify(0.5, 1.5).wall_distance ==
          doctest::Approx(0.0).scale(1).epsilon(1e-9));
    // perpendicular distance from (0.5, 1.0) to the line n = tau + 1
    CHECK(classify(0.5, 1.0).wall_distance ==
          doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(classify_qp(1.5).region == Region::QP_I);
    CHECK(classify_qp(2.0).region == Region::QP_I);
    CHECK(classify_qp(2.5).region == Region::QP_II);
    CHECK(classify_qp(2.5).wall_distance == doctest::Approx(0.5).epsilon(1e-14));
    // j sign agrees with the region split
    CHECK(j_param(0.5, 1.0) < 0.0);   // region I
    CHECK(j_param(0.5, 2.0) > 0.0);   // region II
}

TEST_CASE("closed form tracks the determinant free energy") {
    // just below the blue wall (tau = 0.5, n_inv = 1.25) the determinant
    // free energy is depleted and converges toward the cubic closed form
    const double target = free_energy_gw_finite(0.5, 1.25);
    double prev_gap = 1e300;
    for (int n_f : {16, 32, 64}) {
        ModelParams p;
        p.n_f = n_f;
        p.t = n_f / 2.0;
        p.N = (5 * n_f) / 4;
        const double fdet = free_energy_finite(p, Model::GW);
        CHECK(fdet < free_energy_gw_infinite(0.5));
        const double gap = std::abs(fdet - target);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap <= 0.002);
    // above-wall point matches the unconstrained value
    ModelParams q;
    q.n_f = 48;
    q.t = 24.0;
    q.N = 144;
    CHECK(std::abs(free_energy_finite(q, Model::GW) -
                   free_energy_gw_infinite(0.5)) <= 0.02);
}

TEST_CASE("boundary_hit_probability limits") {
    const TWEvaluator ev;
    ModelParams p;
    p.n_f = 32;
    p.t = 32.0;
    const ScalingPair ms = mu_sigma(p.n_f, p.t);
    p.N = static_cast<int>(std::ceil(1.5 * ms.mu));
    CHECK(boundary_hit_probability(p, Model::GW, ev) <= 0.01);
    p.N = static_cast<int>(std::floor(0.8 * ms.mu));
    CHECK(boundary_hit_probability(p, Model::GW, ev) >= 0.99);
    // QP at N = 2 sqrt(N_f): x = 0, hit probability 1 - F(0)
    ModelParams qp;
    qp.n_f = 16;
    qp.N = 8;
    CHECK(boundary_hit_probability(qp, Model::QP, ev) ==
          doctest::Approx(1.0 - ev.cdf(0.0)).epsilon(1e-12));
}

TEST_CASE("transition orders across every wall") {
    const TransitionReport tau1 = transition_order(Wall::TauOne_GW);
    CHECK(tau1.order == 3);
    CHECK(tau1.jump == doctest::Approx(-1.0).epsilon(1e-4));

    const TransitionReport blue = transition_order(Wall::Blue_I_II);
    CHECK(blue.order == 3);
    CHECK(blue.jump == doctest::Approx(-2.0).epsilon(1e-4));

    const TransitionReport green = transition_order(Wall::Green_II_IV);
    CHECK(green.order == 3);
    CHECK(green.jump == doctest::Approx(-1.0).epsilon(1e-4));

    const TransitionReport red = transition_order(Wall::Red_III_IV);
    CHECK(red.order == 3);
    CHECK(red.jump == doctest::Approx(-0.2).epsilon(1e-4));

    const TransitionReport black = transition_order(Wall::Black_I_III);
    CHECK(black.order == 2);
    CHECK(black.jump == doctest::Approx(0.0677083).epsilon(1e-3));

    const TransitionReport qp = transition_order(Wall::QP_wall);
    CHECK(qp.order == 3);
    CHECK(qp.jump == doctest::Approx(-2.0).epsilon(1e-4));
}
