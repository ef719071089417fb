#include "xx0/detcore.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xx0/specfun.hpp"

namespace xx0 {

WeightSpec WeightSpec::gross_witten(double t) {
    if (t < 0) throw std::domain_error("gross_witten: t must be >= 0");
    return {Kind::GrossWitten, t, 1};
}

WeightSpec WeightSpec::gaussian(int n_f) {
    if (n_f < 1) throw std::domain_error("gaussian: N_f must be >= 1");
    return {Kind::Gaussian, 0.0, n_f};
}

double LogDet::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

Mat toeplitz_continuous(const WeightSpec& w, int n) {
    if (w.kind != WeightSpec::Kind::GrossWitten)
        throw std::domain_error("toeplitz_continuous: needs the GW weight");
    if (n < 1) throw std::domain_error("toeplitz_continuous: n >= 1");
    std::vector<double> ik(n);
    for (int k = 0; k < n; ++k) ik[k] = bessel_i(k, w.t);
    Mat m(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) m(j, l) = ik[std::abs(j - l)];
    return m;
}

namespace {

// Wrapped Bessel sum sum_m I_{k+mN}(t) s^m; terms added until they fall
// below 1e-18 of the partial sum (guaranteed by Bessel decay past index ~t).
cplx wrapped_bessel(int k, int N, double t, cplx s) {
    cplx sum = bessel_i(k, t);
    cplx sp = 1.0, sm = 1.0;
    for (int m = 1; m < 10000; ++m) {
        sp *= s;
        sm /= s;
        const double up = bessel_i(k + m * N, t);
        const double dn = bessel_i(k - m * N, t);
        sum += up * sp + dn * sm;
        if (up + dn < 1e-18 * std::abs(sum) && m * N > t) break;
    }
    return sum;
}

}  // namespace

Mat toeplitz_discrete(const WeightSpec& w, int n, const RootsOfUnity& d) {
    if (std::abs(d.s - cplx(1.0, 0.0)) > 1e-15)
        throw std::domain_error(
            "toeplitz_discrete: real path requires s = 1; use the _c builder");
    if (d.N < 1) throw std::domain_error("toeplitz_discrete: N >= 1");
    std::vector<double> e(n);
    for (int k = 0; k < n; ++k)
        e[k] = wrapped_bessel(k, d.N, w.t, 1.0).real();
    Mat m(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) m(j, l) = e[std::abs(j - l)];
    return m;
}

CMat toeplitz_discrete_c(const WeightSpec& w, int n, const RootsOfUnity& d) {
    if (std::abs(std::abs(d.s) - 1.0) > 1e-12)
        throw std::domain_error("toeplitz_discrete_c: |s| must be 1");
    std::vector<cplx> e(2 * n - 1);
    for (int k = -(n - 1); k <= n - 1; ++k)
        e[k + n - 1] = wrapped_bessel(k, d.N, w.t, d.s);
    CMat m(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) m(j, l) = e[(j - l) + n - 1];
    return m;
}

Mat hankel_continuous(const WeightSpec& w, int n) {
    if (w.kind != WeightSpec::Kind::Gaussian)
        throw std::domain_error("hankel_continuous: needs the Gaussian weight");
    const double a = w.n_f;
    // even moment 2m: (2m-1)!! sqrt(pi/a) (2a)^{-m}
    std::vector<double> mom(2 * n - 1, 0.0);
    mom[0] = std::sqrt(M_PI / a);
    for (int m = 1; 2 * m <= 2 * n - 2; ++m)
        mom[2 * m] = mom[2 * m - 2] * (2 * m - 1) / (2 * a);
    Mat h(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) h(j, k) = mom[j + k];
    return h;
}

Mat hankel_discrete(const WeightSpec& w, int n, const ShiftedLattice& d) {
    const double a = d.n_f;
    const double dx = std::sqrt(2.0) * M_PI / (d.N * std::sqrt(a));
    std::vector<double> mom(2 * n - 1, 0.0);
    std::vector<double> last(2 * n - 1, 0.0);
    for (int m = -d.m_cut; m <= d.m_cut; ++m) {
        const double x = dx * (m - d.s);
        const double wgt = std::exp(-a * x * x);
        double xp = 1.0;
        for (int p = 0; p <= 2 * n - 2; ++p) {
            mom[p] += xp * wgt;
            if (std::abs(m) == d.m_cut) last[p] += std::abs(xp) * wgt;
            xp *= x;
        }
    }
    // the boundary terms bound the dropped tail (Gaussian decay)
    for (int p = 0; p <= 2 * n - 2; p += 2)
        if (last[p] > 1e-14 * std::abs(mom[p]))
            throw std::runtime_error(
                "hankel_discrete: m_cut too small for the 1e-14 tail bound");
    Mat h(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) h(j, k) = mom[j + k];
    return h;
}

LogDet log_det(const Mat& m) {
    if (m.rows() != m.cols()) throw std::domain_error("log_det: square only");
    Eigen::PartialPivLU<Mat> lu(m);
    const auto& u = lu.matrixLU();
    double log_abs = 0.0;
    int sign = lu.permutationP().determinant();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double p = u(i, i);
        if (p == 0.0)
            return {-std::numeric_limits<double>::infinity(), 0};
        if (p < 0) sign = -sign;
        log_abs += std::log(std::abs(p));
    }
    return {log_abs, sign};
}

cplx log_det_complex(const CMat& m) {
    if (m.rows() != m.cols())
        throw std::domain_error("log_det_complex: square only");
    Eigen::PartialPivLU<CMat> lu(m);
    const auto& u = lu.matrixLU();
    cplx acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) acc += std::log(u(i, i));
    if (lu.permutationP().determinant() < 0) acc += cplx(0.0, M_PI);
    return acc;
}

}  // namespace xx0
