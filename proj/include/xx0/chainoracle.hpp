#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "xx0/partition.hpp"

// Ground-truth oracle: exact evolution of the XX0 Hamiltonian restricted to
// the fixed-magnon-number sector of small chains, general correlation
// amplitudes, Schur polynomials, and direct torus quadrature of the
// Schur-weighted matrix integral.

namespace xx0 {

using SparseMat = Eigen::SparseMatrix<double>;

// Weakly decreasing nonnegative integer partition.
using IntPartition = std::vector<int>;

class SectorBasis {
  public:
    // All C(N, N_f) magnon position sets, in lexicographic order of the
    // strictly increasing position tuples. Throws if the dimension exceeds
    // the cap (default 2e6).
    SectorBasis(int N, int n_f, std::int64_t cap = 2000000);

    int sites() const { return N_; }
    int magnons() const { return n_f_; }
    std::int64_t dim() const { return static_cast<std::int64_t>(states_.size()); }
    const std::vector<int>& positions(std::int64_t idx) const {
        return states_[idx];
    }
    // index of a strictly increasing position tuple
    std::int64_t index_of(const std::vector<int>& positions) const;

  private:
    int N_, n_f_;
    std::vector<std::vector<int>> states_;
};

// Sector restriction of H = -sum Delta_nm sigma+_n sigma-_m with
// Delta_nm = (Delta/2)(delta_{|n-m|,1} + delta_{|n-m|,N-1}) when periodic
// (nearest neighbor only when open). Hops onto occupied sites vanish.
SparseMat build_sector_hamiltonian(const SectorBasis& basis, double delta,
                                   bool periodic);

// <block| e^{-tH} |block> with the block of N_f magnons on sites
// 0..N_f-1 at both ends (the return amplitude defining the partition
// function). Lanczos with full reorthogonalization and a convergence check.
double evolve_partition_exact(const ModelParams& p, bool periodic);

// <j-positions| e^{-tH} |l-positions> general sector amplitude.
double correlation_exact(const std::vector<int>& j_positions,
                         const std::vector<int>& l_positions, int N, double t,
                         bool periodic, double delta = 1.0);

// Schur polynomial s_lambda(vars) by the bialternant ratio; coincident
// variables handled by a perturb-and-extrapolate fallback.
std::complex<double> schur_poly(const IntPartition& lam,
                                const std::vector<std::complex<double>>& vars);

// Torus quadrature (node-doubling trapezoid, N_f <= 3) of
// (1/(N_f! (2 pi)^{N_f})) int s_lam s_lam' |Vandermonde|^2 e^{t sum cos}.
double correlation_quadrature(const IntPartition& lam,
                              const IntPartition& lam_prime, int n_f,
                              double t);

}  // namespace xx0
