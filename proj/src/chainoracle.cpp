#include "xx0/chainoracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace xx0 {

SectorBasis::SectorBasis(int N, int n_f, std::int64_t cap) : N_(N), n_f_(n_f) {
    if (N < 1 || n_f < 0 || n_f > N)
        throw std::domain_error("SectorBasis: need 0 <= N_f <= N");
    // dimension C(N, N_f) with overflow guard against the cap
    double logdim = 0.0;
    for (int i = 0; i < n_f; ++i)
        logdim += std::log(static_cast<double>(N - i) / (i + 1));
    if (logdim > std::log(static_cast<double>(cap)) + 1e-9)
        throw std::runtime_error("SectorBasis: sector dimension exceeds cap");
    // enumerate increasing position tuples in lexicographic order
    std::vector<int> cur(n_f);
    for (int i = 0; i < n_f; ++i) cur[i] = i;
    if (n_f == 0) {
        states_.push_back({});
        return;
    }
    while (true) {
        states_.push_back(cur);
        int i = n_f - 1;
        while (i >= 0 && cur[i] == N - n_f + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < n_f; ++j) cur[j] = cur[j - 1] + 1;
    }
}

std::int64_t SectorBasis::index_of(const std::vector<int>& positions) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), positions);
    if (it == states_.end() || *it != positions)
        throw std::domain_error("SectorBasis: state not in basis");
    return it - states_.begin();
}

SparseMat build_sector_hamiltonian(const SectorBasis& basis, double delta,
                                   bool periodic) {
    const int N = basis.sites();
    const std::int64_t dim = basis.dim();
    std::vector<Eigen::Triplet<double>> trip;
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        const auto& pos = basis.positions(idx);
        std::vector<char> occ(N, 0);
        for (int p : pos) occ[p] = 1;
        for (size_t a = 0; a < pos.size(); ++a) {
            for (int dir : {-1, +1}) {
                int to = pos[a] + dir;
                if (periodic) {
                    to = (to + N) % N;
                } else if (to < 0 || to >= N) {
                    continue;
                }
                if (occ[to]) continue;  // hard-core exclusion
                // coupling Delta_nm: at N = 2 periodic the two directions
                // reach the same neighbor, so the delta/2 contributions
                // accumulate to the doubled bond amplitude
                const double amp = delta / 2;
                std::vector<int> npos = pos;
                npos[a] = to;
                std::sort(npos.begin(), npos.end());
                trip.emplace_back(basis.index_of(npos), idx, -amp);
            }
        }
    }
    SparseMat h(dim, dim);
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

namespace {

// amplitude <f| e^{-tH} |i> by Lanczos with full reorthogonalization,
// expanded until two successive Krylov sizes agree to 1e-12
double expmv_amplitude(const SparseMat& h, std::int64_t i_idx,
                       std::int64_t f_idx, double t) {
    const std::int64_t dim = h.rows();
    if (dim == 1) return std::exp(-t * h.coeff(0, 0));
    const int m_max = static_cast<int>(std::min<std::int64_t>(dim, 160));
    Eigen::MatrixXd v(dim, m_max);
    Eigen::VectorXd alpha(m_max), beta(m_max);
    v.col(0).setZero();
    v(i_idx, 0) = 1.0;
    double prev_amp = 1e300;
    int m = 0;
    Eigen::VectorXd w;
    for (int j = 0; j < m_max; ++j) {
        w = h * v.col(j);
        alpha(j) = v.col(j).dot(w);
        w -= alpha(j) * v.col(j);
        if (j > 0) w -= beta(j - 1) * v.col(j - 1);
        // full reorthogonalization (sector dims are small)
        for (int r = 0; r <= j; ++r) w -= v.col(r).dot(w) * v.col(r);
        beta(j) = w.norm();
        m = j + 1;
        const bool breakdown = beta(j) < 1e-14;
        if (m >= 10 || breakdown || m == static_cast<int>(dim) ||
            m == m_max) {
            // evaluate e^{-tT} e_1 on the current tridiagonal
            Eigen::MatrixXd tm = Eigen::MatrixXd::Zero(m, m);
            for (int r = 0; r < m; ++r) {
                tm(r, r) = alpha(r);
                if (r + 1 < m) tm(r, r + 1) = tm(r + 1, r) = beta(r);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tm);
            Eigen::VectorXd e1 = Eigen::VectorXd::Zero(m);
            e1(0) = 1.0;
            const Eigen::VectorXd y =
                es.eigenvectors() *
                (-t * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                (es.eigenvectors().transpose() * e1);
            const double amp = v.leftCols(m).row(f_idx) * y;
            if (std::abs(amp - prev_amp) < 1e-12)
                return amp;
            prev_amp = amp;
            if (breakdown || m == static_cast<int>(dim)) return amp;
            if (m == m_max)
                throw std::runtime_error(
                    "evolve: Krylov iteration did not converge");
        }
        if (j + 1 < m_max) v.col(j + 1) = w / beta(j);
    }
    return prev_amp;
}

}  // namespace

double evolve_partition_exact(const ModelParams& p, bool periodic) {
    if (p.n_f == 0) return 1.0;
    const SectorBasis basis(p.N, p.n_f);
    const SparseMat h = build_sector_hamiltonian(basis, p.delta, periodic);
    std::vector<int> block(p.n_f);
    for (int i = 0; i < p.n_f; ++i) block[i] = i;
    const std::int64_t idx = basis.index_of(block);
    return expmv_amplitude(h, idx, idx, p.t);
}

double correlation_exact(const std::vector<int>& j_positions,
                         const std::vector<int>& l_positions, int N, double t,
                         bool periodic, double delta) {
    if (j_positions.size() != l_positions.size())
        throw std::domain_error("correlation_exact: unequal block sizes");
    const int n_f = static_cast<int>(j_positions.size());
    if (n_f == 0) return 1.0;
    const SectorBasis basis(N, n_f);
    const SparseMat h = build_sector_hamiltonian(basis, delta, periodic);
    return expmv_amplitude(h, basis.index_of(l_positions),
                           basis.index_of(j_positions), t);
}

namespace {

using cd = std::complex<double>;

cd alternant_det(const IntPartition& lam, const std::vector<cd>& x) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int lam_j = j < static_cast<int>(lam.size()) ? lam[j] : 0;
            a(i, j) = std::pow(x[i], lam_j + n - 1 - j);
        }
    }
    return a.determinant();
}

cd schur_direct(const IntPartition& lam, const std::vector<cd>& x) {
    return alternant_det(lam, x) / alternant_det({}, x);
}

}  // namespace

std::complex<double> schur_poly(const IntPartition& lam,
                                const std::vector<cd>& vars) {
    for (size_t i = 1; i < lam.size(); ++i)
        if (lam[i] > lam[i - 1] || lam[i] < 0)
            throw std::domain_error("schur_poly: not a partition");
    const int n = static_cast<int>(vars.size());
    if (n == 0) return 1.0;
    // detect (near-)coincident variables: the bialternant is 0/0 there
    double min_sep = 1e300, scale = 0.0;
    for (int i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(vars[i]));
        for (int j = i + 1; j < n; ++j)
            min_sep = std::min(min_sep, std::abs(vars[i] - vars[j]));
    }
    scale = std::max(scale, 1.0);
    if (n == 1 || min_sep > 1e-5 * scale) {
        const cd denom = alternant_det({}, vars);
        // Vandermonde condition proxy: |det| against the entry scale
        int maxexp = (lam.empty() ? 0 : lam[0]) + n - 1;
        const double entry = std::pow(scale, maxexp);
        if (std::abs(denom) < 1e-12 * entry)
            throw std::runtime_error("schur_poly: Vandermonde ill-conditioned");
        return alternant_det(lam, vars) / denom;
    }
    // removable singularity: perturb by distinct multiples of eps and
    // Richardson-extrapolate. eps must stay well above the scale where the
    // O(eps^{n(n-1)/2}) Vandermonde drowns in determinant roundoff, so use
    // a moderate eps and cancel the O(eps) and O(eps^2) errors instead.
    auto perturbed = [&](double eps) {
        std::vector<cd> y = vars;
        for (int i = 0; i < n; ++i) y[i] += eps * static_cast<double>(i + 1);
        return schur_direct(lam, y);
    };
    const double eps = 2e-3 * scale;
    const cd r1 = 2.0 * perturbed(eps / 2) - perturbed(eps);
    const cd r1h = 2.0 * perturbed(eps / 4) - perturbed(eps / 2);
    return (4.0 * r1h - r1) / 3.0;
}

double correlation_quadrature(const IntPartition& lam,
                              const IntPartition& lam_prime, int n_f,
                              double t) {
    if (n_f < 1 || n_f > 3)
        throw std::domain_error("correlation_quadrature: N_f in 1..3");
    double fact = 1.0;
    for (int i = 2; i <= n_f; ++i) fact *= i;
    double prev = 1e300;
    for (int m = 24; m <= 384; m *= 2) {
        // trapezoid on the torus = plain average over the periodic lattice
        cd acc = 0.0;
        std::vector<int> k(n_f, 0);
        std::vector<cd> x(n_f);
        while (true) {
            double csum = 0.0;
            for (int i = 0; i < n_f; ++i) {
                const double th = -M_PI + 2 * M_PI * k[i] / m;
                x[i] = std::polar(1.0, th);
                csum += std::cos(th);
            }
            acc += alternant_det(lam, x) * std::conj(alternant_det(lam_prime, x)) *
                   std::exp(t * csum);
            int i = n_f - 1;
            while (i >= 0 && ++k[i] == m) k[i--] = 0;
            if (i < 0) break;
        }
        const double cur =
            (acc / std::pow(static_cast<double>(m), n_f)).real() / fact;
        if (std::abs(cur - prev) < 1e-7) return cur;
        prev = cur;
    }
    throw std::runtime_error("correlation_quadrature: node doubling failed");
}

}  // namespace xx0
