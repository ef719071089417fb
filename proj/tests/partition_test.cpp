#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "xx0/partition.hpp"
#include "xx0/phase.hpp"
#include "xx0/specfun.hpp"

using namespace xx0;

namespace {
const TWEvaluator& ev() {
    static TWEvaluator e;
    return e;
}
}  // namespace

TEST_CASE("partition_gw_infinite basics") {
    CHECK(partition_gw_infinite({1, 1, 2.0}).log_abs ==
          doctest::Approx(std::log(bessel_i(0, 2.0))).epsilon(1e-12));
    CHECK(partition_gw_infinite({1, 3, 0.0}).log_abs == 0.0);
    CHECK(partition_gw_infinite({1, 0, 5.0}).log_abs == 0.0);  // vacuum
}

TEST_CASE("partition_gw_infinite vs 3-torus trapezoid quadrature") {
    const double t = 1.0;
    const int M = 48;
    double acc = 0.0;
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            for (int k = 0; k < M; ++k) {
                const double a = 2 * M_PI * i / M;
                const double b = 2 * M_PI * j / M;
                const double c = 2 * M_PI * k / M;
                const std::complex<double> za = std::polar(1.0, a);
                const std::complex<double> zb = std::polar(1.0, b);
                const std::complex<double> zc = std::polar(1.0, c);
                acc += std::norm(za - zb) * std::norm(za - zc) *
                       std::norm(zb - zc) *
                       std::exp(t * (std::cos(a) + std::cos(b) + std::cos(c)));
            }
        }
    }
    acc /= 6.0 * M * M * M;  // 1/(N_f! (2pi)^{N_f}) with the (2pi/M)^3 nodes
    const double z3 = std::exp(partition_gw_infinite({1, 3, t}).log_abs);
    CHECK(z3 == doctest::Approx(acc).epsilon(1e-8));
}

TEST_CASE("partition_gw_finite basics and Riemann convergence") {
    CHECK(partition_gw_finite({8, 2, 0.0}).log_abs == 0.0);
    CHECK(partition_gw_finite({2, 1, 1.0}).log_abs ==
          doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-12));
    const double fin = partition_gw_finite({200, 2, 1.0}).log_abs;
    const double inf = partition_gw_infinite({200, 2, 1.0}).log_abs;
    CHECK(std::abs(fin - inf) <= 1e-10);
}

TEST_CASE("finite-size determinant approaches the infinite one") {
    for (int n_f : {2, 4}) {
        for (double t : {1.0, 4.0}) {
            const double inf = partition_gw_infinite({1, n_f, t}).log_abs;
            const double g64 =
                std::abs(partition_gw_finite({64, n_f, t}).log_abs - inf);
            const double g128 =
                std::abs(partition_gw_finite({128, n_f, t}).log_abs - inf);
            CHECK(g128 <= g64);
        }
    }
}

TEST_CASE("discrete Heine identity: enumeration at N_f=2, N=4") {
    // (1/(N_f! |d|^{N_f})) sum over the domain of |Delta|^2 prod f equals
    // the discrete Toeplitz determinant
    const double t = 1.3;
    const int N = 4;
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const std::complex<double> zi = std::polar(1.0, 2 * M_PI * i / N);
            const std::complex<double> zj = std::polar(1.0, 2 * M_PI * j / N);
            acc += std::norm(zi - zj) *
                   std::exp(t / 2 * (zi + 1.0 / zi + zj + 1.0 / zj)).real();
        }
    }
    acc /= 2.0 * N * N;
    CHECK(std::exp(partition_gw_finite({N, 2, t}).log_abs) ==
          doctest::Approx(acc).epsilon(1e-12));
}

TEST_CASE("partition_qp_infinite Selberg values") {
    CHECK(partition_qp_infinite({1, 1, 0.0}, 1.0).log_abs ==
          doctest::Approx(0.0).scale(1).epsilon(1e-13));
    CHECK(partition_qp_infinite({1, 2, 0.0}, 1.0).log_abs ==
          doctest::Approx(std::log(2.0) - 2 * std::log(2.0)).epsilon(1e-12));
    // N_f=4, tau=1: -4 log 4 + log 288
    CHECK(partition_qp_infinite({1, 4, 0.0}, 1.0).log_abs ==
          doctest::Approx(std::log(288.0) - 4 * std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("partition_qp_finite convergence and symmetry") {
    // 1x1: a single positive lattice sum
    const LogDet one = partition_qp_finite({16, 1, 0.0});
    CHECK(one.sign == 1);
    CHECK(std::isfinite(one.log_abs));
    // c_QP-scaled ratio to the continuous Hankel approaches 1
    for (int n_f : {2, 4}) {
        const int N = 300;
        const double rnf = n_f;
        const double log_c =
            -n_f * std::log(N * std::sqrt(rnf) / (std::sqrt(2.0) * M_PI));
        const double ratio = log_c +
                             partition_qp_finite({N, n_f, 0.0}).log_abs -
                             hp::hankel_gauss_logdet(n_f, n_f).log_abs;
        CHECK(std::exp(ratio) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("ratio_to_tw GW behavior") {
    // N far above mu: both sides saturate at 1
    const ScalingPair ms = mu_sigma(4, 4.0);
    ModelParams p;
    p.n_f = 4;
    p.t = 4.0;
    p.N = static_cast<int>(3 * ms.mu);
    const RatioReport r = ratio_to_tw(p, Model::GW, ev());
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.f_of_x == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.abs_gap <= 1e-3);
}

TEST_CASE("ratio_to_tw QP x-argument arithmetic") {
    ModelParams p;
    p.n_f = 16;
    p.N = 8;  // N = 2 sqrt(N_f) exactly -> x = 0
    const RatioReport r = ratio_to_tw(p, Model::QP, ev());
    CHECK(r.x == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(r.f_of_x == doctest::Approx(ev().cdf(0.0)));
    // QP prefactor consistency: bounded ratio
    CHECK(r.ratio > 0.0);
    CHECK(r.ratio < 1.2);
}

TEST_CASE("free_energy_finite") {
    ModelParams p;
    p.n_f = 2;
    p.t = 0.0;
    p.N = 16;
    CHECK(free_energy_finite(p, Model::GW) == 0.0);
    // N_f=32, t=16, N large: within 0.02 of tau^2/4 = 1/16
    ModelParams q;
    q.n_f = 32;
    q.t = 16.0;
    q.N = 256;
    CHECK(std::abs(free_energy_finite(q, Model::GW) - 1.0 / 16) <= 0.02);
    // monotone in t at fixed (N_f, N)
    double prev = -1.0;
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        ModelParams r{24, 3, t};
        const double f = free_energy_finite(r, Model::GW);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("width_probability_exact") {
    // trivial regimes
    CHECK(width_probability_exact(2, 0.5, 1) == 0.0);
    const int big = 2 + static_cast<int>(10 * 0.5) + 50;
    CHECK(width_probability_exact(2, 0.5, big) >= 1.0 - 1e-6);
    // interior value in [0,1], nondecreasing in N
    double prev = 0.0;
    for (int N : {2, 3, 4, 5, 6}) {
        const double p = width_probability_exact(2, 0.5, N);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(p >= prev - 1e-10);
        prev = p;
    }
}
