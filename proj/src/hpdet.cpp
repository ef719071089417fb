// High-precision determinant backend. Everything multiprecision lives in
// this translation unit; the rest of the library sees only LogDet/double.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "xx0/detcore.hpp"

namespace xx0 {
namespace hp {

namespace {

using Real =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

// I_k(t) by the ascending power series carried in full precision. The
// series is benign at this precision for every t used here (t <= 300).
Real bessel_i_mp(int k, const Real& t) {
    k = std::abs(k);
    if (t == 0) return k == 0 ? 1 : 0;
    const Real half = t / 2;
    Real first = 1;
    for (int j = 1; j <= k; ++j) first *= half / j;
    const Real q = half * half;
    Real term = first, sum = first;
    const Real eps = Real(1) / Real("1e210");
    for (int m = 1; m < 5000; ++m) {
        term *= q / (Real(m) * (m + k));
        sum += term;
        if (term < eps * sum) break;
    }
    return sum;
}

// Partial-pivot LU determinant in place; returns (log|det|, sign).
LogDet lu_logdet(std::vector<std::vector<Real>>& a) {
    const int n = static_cast<int>(a.size());
    int sign = 1;
    Real log_abs = 0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        Real best = abs(a[c][c]);
        for (int r = c + 1; r < n; ++r) {
            if (abs(a[r][c]) > best) {
                best = abs(a[r][c]);
                piv = r;
            }
        }
        if (best == 0)
            return {-std::numeric_limits<double>::infinity(), 0};
        if (piv != c) {
            std::swap(a[piv], a[c]);
            sign = -sign;
        }
        if (a[c][c] < 0) sign = -sign;
        log_abs += log(abs(a[c][c]));
        for (int r = c + 1; r < n; ++r) {
            const Real f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return {static_cast<double>(log_abs), sign};
}

Real lu_logabs_mp(std::vector<std::vector<Real>>& a) {
    const int n = static_cast<int>(a.size());
    Real log_abs = 0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        Real best = abs(a[c][c]);
        for (int r = c + 1; r < n; ++r)
            if (abs(a[r][c]) > best) {
                best = abs(a[r][c]);
                piv = r;
            }
        if (best == 0) throw std::runtime_error("hp determinant is zero");
        if (piv != c) std::swap(a[piv], a[c]);
        log_abs += log(abs(a[c][c]));
        for (int r = c + 1; r < n; ++r) {
            const Real f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return log_abs;
}

std::vector<std::vector<Real>> gw_toeplitz_mp(double t, int n) {
    const Real rt = t;
    std::vector<Real> ik(n);
    for (int k = 0; k < n; ++k) ik[k] = bessel_i_mp(k, rt);
    std::vector<std::vector<Real>> a(n, std::vector<Real>(n));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) a[j][l] = ik[std::abs(j - l)];
    return a;
}

std::vector<std::vector<Real>> gw_toeplitz_discrete_mp(double t, int n,
                                                       int N) {
    const Real rt = t;
    std::vector<Real> e(n);
    for (int k = 0; k < n; ++k) {
        Real sum = bessel_i_mp(k, rt);
        for (int m = 1; m < 10000; ++m) {
            const Real up = bessel_i_mp(k + m * N, rt);
            const Real dn = bessel_i_mp(k - m * N, rt);
            sum += up + dn;
            if (m * N > t && up + dn < sum / Real("1e210")) break;
        }
        e[k] = sum;
    }
    std::vector<std::vector<Real>> a(n, std::vector<Real>(n));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) a[j][l] = e[std::abs(j - l)];
    return a;
}

std::vector<std::vector<Real>> gauss_hankel_mp(int n_f, int n) {
    const Real a = n_f;
    const Real pi = 4 * atan(Real(1));
    std::vector<Real> mom(2 * n - 1, Real(0));
    mom[0] = sqrt(pi / a);
    for (int m = 1; 2 * m <= 2 * n - 2; ++m)
        mom[2 * m] = mom[2 * m - 2] * (2 * m - 1) / (2 * a);
    std::vector<std::vector<Real>> h(n, std::vector<Real>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) h[j][k] = mom[j + k];
    return h;
}

std::vector<std::vector<Real>> gauss_hankel_discrete_mp(int n_f, int n,
                                                        int N) {
    const Real a = n_f;
    const Real pi = 4 * atan(Real(1));
    const Real dx = sqrt(Real(2)) * pi / (N * sqrt(a));
    // lattice tail: need e^{-a x^2} below ~1e-220; x^2 > 510/a suffices
    const int m_cut =
        static_cast<int>(std::ceil(std::sqrt(510.0 / n_f) /
                                   (std::sqrt(2.0) * M_PI / (N * std::sqrt(double(n_f)))))) +
        2;
    std::vector<Real> mom(2 * n - 1, Real(0));
    for (int m = -m_cut; m <= m_cut; ++m) {
        const Real x = dx * m;  // s = 0 lattice
        const Real w = exp(-a * x * x);
        Real xp = 1;
        for (int p = 0; p <= 2 * n - 2; ++p) {
            mom[p] += xp * w;
            xp *= x;
        }
    }
    std::vector<std::vector<Real>> h(n, std::vector<Real>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) h[j][k] = mom[j + k];
    return h;
}

}  // namespace

LogDet toeplitz_gw_logdet(double t, int n) {
    if (t < 0 || n < 1) throw std::domain_error("toeplitz_gw_logdet: bad args");
    if (t == 0) return {0.0, 1};
    auto a = gw_toeplitz_mp(t, n);
    return lu_logdet(a);
}

LogDet toeplitz_gw_discrete_logdet(double t, int n, int N) {
    if (t < 0 || n < 1 || N < 1)
        throw std::domain_error("toeplitz_gw_discrete_logdet: bad args");
    if (t == 0) return {0.0, 1};
    auto a = gw_toeplitz_discrete_mp(t, n, N);
    return lu_logdet(a);
}

LogDet hankel_gauss_logdet(int n_f, int n) {
    if (n_f < 1 || n < 1)
        throw std::domain_error("hankel_gauss_logdet: bad args");
    auto h = gauss_hankel_mp(n_f, n);
    return lu_logdet(h);
}

LogDet hankel_gauss_discrete_logdet(int n_f, int n, int N) {
    if (n_f < 1 || n < 1 || N < 1)
        throw std::domain_error("hankel_gauss_discrete_logdet: bad args");
    auto h = gauss_hankel_discrete_mp(n_f, n, N);
    return lu_logdet(h);
}

double toeplitz_gw_free_energy_gap(double t, int n_f, double f_ref) {
    auto a = gw_toeplitz_mp(t, n_f);
    const Real ld = lu_logabs_mp(a);
    const Real gap = ld / (Real(n_f) * n_f) - Real(f_ref);
    return static_cast<double>(gap);
}

}  // namespace hp
}  // namespace xx0
