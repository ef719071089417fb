#pragma once

#include <complex>

#include <Eigen/Dense>

// Continuous and discrete Toeplitz/Hankel matrix builders for the two
// model weights, and stable (log|det|, sign) evaluation.
//
// Weights: Gross-Witten f(z) = e^{(t/2)(z + 1/z)} on the unit circle
// (Fourier coefficients I_k(t)) and the Gaussian f(x) = e^{-N_f x^2} on
// the line. Discrete domains: the N-th roots of s on the circle, and the
// shifted lattice sqrt(2) pi / (N sqrt(N_f)) (m - s) on the line.

namespace xx0 {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

struct WeightSpec {
    enum class Kind { GrossWitten, Gaussian };
    Kind kind;
    double t = 0.0;  // GrossWitten parameter
    int n_f = 1;     // Gaussian scale

    static WeightSpec gross_witten(double t);
    static WeightSpec gaussian(int n_f);
};

struct RootsOfUnity {
    int N;
    cplx s;  // unit modulus
};

struct ShiftedLattice {
    int N;
    int n_f;
    double s;      // shift in [0, 1)
    int m_cut;     // lattice truncation |m| <= m_cut
};

struct LogDet {
    double log_abs;
    int sign;  // +1 or -1; 0 together with log_abs = -inf flags det == 0

    bool is_singular() const { return sign == 0; }
    double value() const;  // sign * exp(log_abs); may over/underflow
};

// Entry (j,l) = I_{j-l}(t); symmetric, n x n.
Mat toeplitz_continuous(const WeightSpec& w, int n);

// Entry (j,l) = (1/N) sum_{z^N = s} z^{-(j-l)} f(z)
//             = sum_m I_{j-l+mN}(t) s^m  (wrapped Bessel sum).
// Real fast path for s = 1; general unit-modulus s via the complex builder.
Mat toeplitz_discrete(const WeightSpec& w, int n, const RootsOfUnity& d);
CMat toeplitz_discrete_c(const WeightSpec& w, int n, const RootsOfUnity& d);

// Entry (j,k) = closed-form Gaussian moment int x^{j+k} e^{-N_f x^2} dx.
Mat hankel_continuous(const WeightSpec& w, int n);

// Entry (j,k) = sum over the shifted lattice of x^{j+k} e^{-N_f x^2}.
// Throws when m_cut leaves a relative lattice tail above 1e-14.
Mat hankel_discrete(const WeightSpec& w, int n, const ShiftedLattice& d);

// LU with partial pivoting; exact zero determinant signaled by
// (log_abs = -inf, sign = 0).
LogDet log_det(const Mat& m);

// log det for complex matrices (used by the width-probability contour).
cplx log_det_complex(const CMat& m);

// High-precision determinant paths (~200 decimal digit internal arithmetic).
// The free energies need log-determinants of matrices with condition
// numbers like e^{2t}; double LU loses the sign beyond t ~ 35 and the
// Gaussian Hankel matrices are numerically singular already at n ~ 8.
namespace hp {

// log D_n with entries I_{j-l}(t) (continuous GW Toeplitz).
LogDet toeplitz_gw_logdet(double t, int n);

// log D_n^{|d|}, entries sum_m I_{j-l+mN}(t), domain z^N = 1.
LogDet toeplitz_gw_discrete_logdet(double t, int n, int N);

// log H_n with Gaussian weight e^{-a x^2}, a = n_f (continuous moments).
LogDet hankel_gauss_logdet(int n_f, int n);

// log H_n^{|d|} on the s = 0 lattice with |d| = N.
LogDet hankel_gauss_discrete_logdet(int n_f, int n, int N);

// (1/n_f^2) log D_{n_f}(f_GW) - f_ref, with the subtraction performed in
// high precision (the difference can sit 30+ digits below the terms).
double toeplitz_gw_free_energy_gap(double t, int n_f, double f_ref);

}  // namespace hp

}  // namespace xx0
