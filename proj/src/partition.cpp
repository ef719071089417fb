#include "xx0/partition.hpp"

#include <cmath>
#include <stdexcept>

#include "xx0/phase.hpp"
#include "xx0/specfun.hpp"

namespace xx0 {

LogDet partition_gw_infinite(const ModelParams& p) {
    if (p.n_f == 0) return {0.0, 1};
    if (p.n_f < 0) throw std::domain_error("partition_gw_infinite: N_f >= 0");
    return hp::toeplitz_gw_logdet(p.t, p.n_f);
}

LogDet partition_gw_finite(const ModelParams& p) {
    if (p.n_f == 0) return {0.0, 1};
    if (p.N < 1) throw std::domain_error("partition_gw_finite: N >= 1");
    return hp::toeplitz_gw_discrete_logdet(p.t, p.n_f, p.N);
}

cplx log_partition_gw_finite(const ModelParams& p, cplx s) {
    if (p.n_f == 0) return 0.0;
    const CMat m =
        toeplitz_discrete_c(WeightSpec::gross_witten(p.t), p.n_f, {p.N, s});
    return log_det_complex(m);
}

LogDet partition_qp_infinite(const ModelParams& p, double tau) {
    if (p.n_f < 1) throw std::domain_error("partition_qp_infinite: N_f >= 1");
    if (tau <= 0) throw std::domain_error("partition_qp_infinite: tau > 0");
    double acc = -p.n_f * std::log(tau * p.n_f);
    for (int j = 1; j <= p.n_f; ++j) acc += log_gamma(1.0 + j);
    return {acc, 1};
}

LogDet partition_qp_finite(const ModelParams& p) {
    if (p.n_f == 0) return {0.0, 1};
    if (p.N < 1) throw std::domain_error("partition_qp_finite: N >= 1");
    return hp::hankel_gauss_discrete_logdet(p.n_f, p.n_f, p.N);
}

RatioReport ratio_to_tw(const ModelParams& p, Model model,
                        const TWEvaluator& ev) {
    double x, log_ratio;
    if (model == Model::GW) {
        const ScalingPair ms = mu_sigma(p.n_f, p.t);
        x = (p.N - ms.mu) / ms.sigma;
        log_ratio =
            partition_gw_finite(p).log_abs - partition_gw_infinite(p).log_abs;
    } else {
        const double rnf = p.n_f;
        x = (p.N - 2 * std::sqrt(rnf)) * std::pow(2.0, 2.0 / 3.0) *
            std::pow(rnf, 1.0 / 6.0);
        const double log_c =
            -p.n_f * std::log(p.N * std::sqrt(rnf) / (std::sqrt(2.0) * M_PI));
        log_ratio = log_c + partition_qp_finite(p).log_abs -
                    hp::hankel_gauss_logdet(p.n_f, p.n_f).log_abs;
    }
    if (std::abs(log_ratio) > 700)
        throw std::runtime_error("ratio_to_tw: log-ratio overflow");
    RatioReport r;
    r.ratio = std::exp(log_ratio);
    r.x = x;
    r.f_of_x = ev.cdf(x);
    r.abs_gap = std::abs(r.ratio - r.f_of_x);
    return r;
}

double free_energy_finite(const ModelParams& p, Model model) {
    if (p.n_f < 1) throw std::domain_error("free_energy_finite: N_f >= 1");
    const LogDet ld =
        model == Model::GW ? partition_gw_finite(p) : partition_qp_finite(p);
    return ld.log_abs / (static_cast<double>(p.n_f) * p.n_f);
}

double width_probability_exact(int n_f, double t, int N) {
    if (n_f < 1) throw std::domain_error("width_probability_exact: N_f >= 1");
    if (N <= n_f - 1) return 0.0;  // width >= N_f - 1 at time 0
    const double log_z = partition_gw_infinite({N, n_f, t}).log_abs;
    ModelParams p{N, n_f, t};
    int K = std::max(4 * N, 64);
    double prev = -1.0;
    for (int d = 0; d < 7; ++d) {
        cplx acc = 0.0;
        for (int k = 0; k < K; ++k) {
            const cplx s = std::polar(1.0, 2 * M_PI * k / K);
            acc += std::exp(log_partition_gw_finite(p, s) - log_z);
        }
        const double cur = acc.real() / K;
        if (prev >= 0.0 && std::abs(cur - prev) < 1e-8) {
            // clip quadrature-level noise at the boundaries of [0, 1]
            return std::min(std::max(cur, 0.0), 1.0);
        }
        prev = cur;
        K *= 2;
    }
    throw std::runtime_error(
        "width_probability_exact: contour quadrature did not converge");
}

}  // namespace xx0
