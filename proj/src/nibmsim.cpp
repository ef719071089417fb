#include "xx0/nibmsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "xx0/specfun.hpp"

namespace xx0 {

int WalkPath::position_after(int n_jumps) const {
    int p = start;
    for (int i = 0; i < n_jumps; ++i) p += jump_signs[i];
    return p;
}

WalkPath sample_bridge_walk(int start, double t, Rng& rng) {
    if (t <= 0) throw std::domain_error("sample_bridge_walk: t > 0");
    // draw m with P(m) = (t/2)^{2m}/(m!)^2 / I_0(t)
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double target = unif(rng) * bessel_i(0, t);
    double term = 1.0, cum = 0.0;
    int m = 0;
    const double q = t * t / 4;
    for (;; ++m) {
        cum += term;
        if (cum >= target) break;
        term *= q / (static_cast<double>(m + 1) * (m + 1));
        if (m > 100000)
            throw std::runtime_error("sample_bridge_walk: K draw overflow");
    }
    WalkPath w;
    w.start = start;
    w.jump_times.resize(2 * m);
    for (double& jt : w.jump_times) jt = unif(rng) * t;
    std::sort(w.jump_times.begin(), w.jump_times.end());
    w.jump_signs.assign(2 * m, +1);
    std::fill(w.jump_signs.begin() + m, w.jump_signs.end(), -1);
    std::shuffle(w.jump_signs.begin(), w.jump_signs.end(), rng);
    return w;
}

PathEnsemble sample_nonintersecting(int n_f, double t, Rng& rng,
                                    std::int64_t max_attempts) {
    if (n_f < 1) throw std::domain_error("sample_nonintersecting: N_f >= 1");
    struct Event {
        double time;
        int walker;
        int sign;
    };
    for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        PathEnsemble ens;
        ens.paths.reserve(n_f);
        std::vector<Event> events;
        for (int wkr = 0; wkr < n_f; ++wkr) {
            ens.paths.push_back(sample_bridge_walk(wkr, t, rng));
            const WalkPath& w = ens.paths.back();
            for (size_t i = 0; i < w.jump_times.size(); ++i)
                events.push_back({w.jump_times[i], wkr, w.jump_signs[i]});
        }
        std::sort(events.begin(), events.end(),
                  [](const Event& a, const Event& b) { return a.time < b.time; });
        std::vector<int> pos(n_f);
        std::iota(pos.begin(), pos.end(), 0);
        bool ok = true;
        int width = n_f - 1;
        for (const Event& e : events) {
            pos[e.walker] += e.sign;
            // ordering can only break against the moved walker's neighbors
            if ((e.walker > 0 && pos[e.walker - 1] >= pos[e.walker]) ||
                (e.walker + 1 < n_f && pos[e.walker] >= pos[e.walker + 1])) {
                ok = false;
                break;
            }
            width = std::max(width, pos[n_f - 1] - pos[0]);
        }
        if (ok) {
            ens.width = width;
            ens.attempts = attempt;
            return ens;
        }
    }
    throw std::runtime_error("sample_nonintersecting: attempts exhausted");
}

std::vector<WidthEstimate> empirical_width_cdf(int n_f, double t,
                                               const std::vector<int>& n_values,
                                               std::int64_t samples,
                                               Rng& rng) {
    if (samples < 1000)
        throw std::domain_error("empirical_width_cdf: samples >= 1000");
    std::vector<std::int64_t> below(n_values.size(), 0);
    for (std::int64_t s = 0; s < samples; ++s) {
        const PathEnsemble ens = sample_nonintersecting(n_f, t, rng);
        for (size_t i = 0; i < n_values.size(); ++i)
            if (ens.width < n_values[i]) ++below[i];
    }
    std::vector<WidthEstimate> out(n_values.size());
    for (size_t i = 0; i < n_values.size(); ++i) {
        const double p = static_cast<double>(below[i]) / samples;
        out[i] = {n_values[i], p, std::sqrt(p * (1 - p) / samples)};
    }
    return out;
}

std::vector<std::vector<int>> magnon_measurement_walk(int N, int n_f,
                                                      int steps, Rng& rng) {
    if (n_f > N || n_f < 0)
        throw std::domain_error("magnon_measurement_walk: need N_f <= N");
    std::vector<char> occ(N, 0);
    std::vector<int> pos(n_f);
    for (int i = 0; i < n_f; ++i) {
        pos[i] = i;
        occ[i] = 1;
    }
    std::vector<std::vector<int>> traj;
    traj.reserve(steps + 1);
    traj.push_back(pos);
    if (n_f == 0) {
        traj.assign(steps + 1, {});
        return traj;
    }
    std::uniform_int_distribution<int> pick(0, n_f - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int s = 0; s < steps; ++s) {
        const int i = pick(rng);
        const int p = pos[i];
        const int left = (p - 1 + N) % N;
        const int right = (p + 1) % N;
        const bool lfree = !occ[left];
        const bool rfree = !occ[right];
        int to = p;
        if (lfree && rfree) {
            to = coin(rng) ? right : left;
        } else if (lfree) {
            to = left;   // forced away from the right neighbor
        } else if (rfree) {
            to = right;  // forced away from the left neighbor
        }                // blocked on both sides: stays
        if (to != p && N > 1) {
            occ[p] = 0;
            occ[to] = 1;
            pos[i] = to;
        }
        traj.push_back(pos);
    }
    return traj;
}

}  // namespace xx0
