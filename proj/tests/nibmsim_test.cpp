#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xx0/nibmsim.hpp"
#include "xx0/partition.hpp"
#include "xx0/specfun.hpp"

using namespace xx0;

TEST_CASE("bridge walks return to the start and have sorted jump times") {
    Rng rng(12345);
    for (int rep = 0; rep < 200; ++rep) {
        const WalkPath w = sample_bridge_walk(3, 2.0, rng);
        CHECK(w.start == 3);
        CHECK(w.jump_times.size() == w.jump_signs.size());
        CHECK(w.jump_times.size() % 2 == 0);
        CHECK(std::is_sorted(w.jump_times.begin(), w.jump_times.end()));
        for (double jt : w.jump_times) {
            CHECK(jt >= 0.0);
            CHECK(jt <= 2.0);
        }
        CHECK(w.position_after(static_cast<int>(w.jump_signs.size())) == 3);
    }
    CHECK_THROWS_AS(sample_bridge_walk(0, 0.0, rng), std::domain_error);
}

TEST_CASE("bridge jump-count mean matches t I_1(t)/I_0(t)") {
    Rng rng(777);
    const double t = 2.0;
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k =
            static_cast<double>(sample_bridge_walk(0, t, rng).jump_signs.size());
        sum += k;
        sumsq += k * k;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    const double want = t * bessel_i(1, t) / bessel_i(0, t);
    CHECK(std::abs(mean - want) <= 3 * se);
}

TEST_CASE("rejection sampling accepts easily at small t") {
    Rng rng(9);
    std::int64_t attempts = 0;
    const int reps = 2000;
    for (int i = 0; i < reps; ++i)
        attempts += sample_nonintersecting(2, 0.1, rng).attempts;
    // acceptance rate at t = 0.1, N_f = 2 is near 1
    CHECK(static_cast<double>(reps) / attempts >= 0.9);
}

TEST_CASE("accepted ensembles are truly nonintersecting") {
    Rng rng(4242);
    for (int rep = 0; rep < 300; ++rep) {
        const PathEnsemble ens = sample_nonintersecting(3, 2.0, rng);
        CHECK(ens.width >= 2);  // at least the initial packing width
        // replay all events independently of the sampler's bookkeeping
        struct Ev {
            double t;
            int w, s;
        };
        std::vector<Ev> evs;
        for (int w = 0; w < 3; ++w)
            for (size_t i = 0; i < ens.paths[w].jump_times.size(); ++i)
                evs.push_back({ens.paths[w].jump_times[i], w,
                               ens.paths[w].jump_signs[i]});
        std::sort(evs.begin(), evs.end(),
                  [](const Ev& a, const Ev& b) { return a.t < b.t; });
        std::vector<int> pos = {0, 1, 2};
        int width = 2;
        for (const Ev& e : evs) {
            pos[e.w] += e.s;
            CHECK(pos[0] < pos[1]);
            CHECK(pos[1] < pos[2]);
            width = std::max(width, pos[2] - pos[0]);
        }
        CHECK(pos == std::vector<int>{0, 1, 2});
        CHECK(width == ens.width);
    }
}

TEST_CASE("empirical width CDF agrees with the exact contour formula") {
    Rng rng(2026);
    const std::vector<int> ns = {2, 3, 4};
    const auto est = empirical_width_cdf(2, 1.0, ns, 20000, rng);
    for (const WidthEstimate& e : est) {
        const double exact = width_probability_exact(2, 1.0, e.N);
        CHECK(std::abs(e.p_hat - exact) <= 4 * std::max(e.se, 1e-4));
    }
    // CDF is nondecreasing in N and the bottom value is 0 (W >= N_f - 1)
    CHECK(est[0].p_hat <= est[1].p_hat);
    CHECK(est[1].p_hat <= est[2].p_hat);
    Rng rng2(1);
    CHECK_THROWS_AS(empirical_width_cdf(2, 1.0, ns, 10, rng2),
                    std::domain_error);
}

TEST_CASE("determinism under a fixed seed") {
    Rng a(55), b(55);
    for (int rep = 0; rep < 50; ++rep) {
        const PathEnsemble ea = sample_nonintersecting(3, 1.5, a);
        const PathEnsemble eb = sample_nonintersecting(3, 1.5, b);
        CHECK(ea.width == eb.width);
        CHECK(ea.attempts == eb.attempts);
        for (int w = 0; w < 3; ++w) {
            CHECK(ea.paths[w].jump_times == eb.paths[w].jump_times);
            CHECK(ea.paths[w].jump_signs == eb.paths[w].jump_signs);
        }
    }
}

TEST_CASE("magnon measurement walk invariants") {
    Rng rng(31);
    const int N = 12, n_f = 4, steps = 4000;
    const auto traj = magnon_measurement_walk(N, n_f, steps, rng);
    CHECK(traj.size() == static_cast<size_t>(steps + 1));
    // initial condition: packed block
    CHECK(traj.front() == std::vector<int>{0, 1, 2, 3});
    for (size_t s = 1; s < traj.size(); ++s) {
        const auto& cur = traj[s];
        CHECK(cur.size() == static_cast<size_t>(n_f));
        // all positions valid and distinct
        std::vector<int> sorted = cur;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i) {
            CHECK(sorted[i] >= 0);
            CHECK(sorted[i] < N);
            if (i > 0) CHECK(sorted[i] > sorted[i - 1]);
        }
        // at most one magnon moved, by exactly one site on the ring
        int moved = 0;
        for (int i = 0; i < n_f; ++i) {
            if (cur[i] != traj[s - 1][i]) {
                ++moved;
                const int d = std::abs(cur[i] - traj[s - 1][i]);
                CHECK((d == 1 || d == N - 1));
            }
        }
        CHECK(moved <= 1);
    }
    // fully packed ring is frozen
    const auto frozen = magnon_measurement_walk(4, 4, 100, rng);
    for (const auto& st : frozen) CHECK(st == std::vector<int>{0, 1, 2, 3});
}
