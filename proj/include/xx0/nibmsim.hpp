#pragma once

#include <cstdint>
#include <random>
#include <vector>

// Monte Carlo sampler of nonintersecting continuous-time symmetric simple
// random walks with bridge endpoint conditions, width statistics, and the
// single-magnon measurement dynamics on a ring.

namespace xx0 {

using Rng = std::mt19937_64;

struct WalkPath {
    std::vector<double> jump_times;  // strictly increasing in (0, t)
    std::vector<int> jump_signs;     // +1 / -1 per jump, balanced
    int start;

    int position_after(int n_jumps) const;  // start + prefix sum of signs
};

struct PathEnsemble {
    std::vector<WalkPath> paths;  // ordered by start 0..N_f-1
    int width;                    // max over time of (last - first) position
    std::int64_t attempts;        // rejection-sampling attempts consumed
};

struct WidthEstimate {
    int N;
    double p_hat;  // empirical P(W < N)
    double se;     // binomial standard error
};

// Jump rate 1/2 per direction (total rate 1), conditioned to return to
// start at time t: K = 2m jumps with P(K=2m) proportional to
// (t/2)^{2m}/(m!)^2 (normalization e^{-t} I_0(t)), times as sorted
// uniforms, signs a random balanced shuffle.
WalkPath sample_bridge_walk(int start, double t, Rng& rng);

// Rejection sampling of N_f bridges from starts (0..N_f-1); accept iff the
// strict ordering holds at every jump event. Throws after max_attempts.
PathEnsemble sample_nonintersecting(int n_f, double t, Rng& rng,
                                    std::int64_t max_attempts = 10000000);

// Empirical P(W < N) with binomial standard errors over `samples` accepted
// ensembles.
std::vector<WidthEstimate> empirical_width_cdf(int n_f, double t,
                                               const std::vector<int>& n_values,
                                               std::int64_t samples, Rng& rng);

// Discrete-time single-spin-flip dynamics on a ring: a uniformly chosen
// magnon moves +-1 with probability 1/2 if both neighbors are free, moves
// deterministically away from a single adjacent magnon, and stays put if
// blocked on both sides. Returns the trajectory of magnon position sets.
std::vector<std::vector<int>> magnon_measurement_walk(int N, int n_f,
                                                      int steps, Rng& rng);

}  // namespace xx0
