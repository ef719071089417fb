#pragma once

#include <complex>

#include "xx0/detcore.hpp"
#include "xx0/tracywidom.hpp"

// Partition functions of the XX0 chain as Toeplitz/Hankel determinants,
// finite-size free energies, and the ratio-to-Tracy-Widom comparison.

namespace xx0 {

enum class Model { GW, QP };

struct ModelParams {
    int N = 1;          // chain / domain size
    int n_f = 1;        // magnon count
    double t = 0.0;     // time / inverse temperature
    double delta = 1.0; // coupling

    double tau() const { return t / n_f; }
    double n_inv() const { return static_cast<double>(N) / n_f; }
    double lambda() const { return N / std::sqrt(static_cast<double>(n_f)); }
};

struct RatioReport {
    double ratio;    // c * Z^{|d|} / Z
    double x;        // Tracy-Widom argument
    double f_of_x;   // F(x)
    double abs_gap;  // |ratio - f_of_x|
};

// log Z_GW = log D_{N_f}(f_GW), entries I_{j-l}(t). N_f = 0 gives Z = 1.
LogDet partition_gw_infinite(const ModelParams& p);

// log Z_GW^{|d|} on the domain z^N = 1 (wrapped Bessel entries).
LogDet partition_gw_finite(const ModelParams& p);

// Complex log Z_GW^{|d|} on z^N = s for the width-probability contour.
cplx log_partition_gw_finite(const ModelParams& p, cplx s);

// log Z_QP = -N_f log(tau N_f) + sum_{j=1..N_f} log Gamma(1+j) (Selberg).
LogDet partition_qp_infinite(const ModelParams& p, double tau);

// log Z_QP^{|d|}: discrete Gaussian Hankel determinant on the s = 0 lattice.
LogDet partition_qp_finite(const ModelParams& p);

// Eq.-13-style comparison c * Z^{|d|}/Z vs F(x).
// GW: x = (N - mu)/sigma, c = 1. QP: x = (N - 2 sqrt(N_f)) 2^{2/3} N_f^{1/6},
// c = (N sqrt(N_f)/(sqrt(2) pi))^{-N_f}. Throws on |log ratio| > 700.
RatioReport ratio_to_tw(const ModelParams& p, Model model,
                        const TWEvaluator& ev);

// (1/N_f^2) log Z^{|d|}.
double free_energy_finite(const ModelParams& p, Model model);

// P(W_{N_f}(t) < N) by the contour integral of the determinant ratio over
// the unit circle of s; K = max(4N, 64) nodes, doubled until converged.
double width_probability_exact(int n_f, double t, int N);

}  // namespace xx0
