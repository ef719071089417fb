#include "xx0/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace xx0 {

namespace detail {

double bessel_i_series(int k, double t) {
    k = std::abs(k);
    if (t == 0.0) return k == 0 ? 1.0 : 0.0;
    // I_k(t) = sum_m (t/2)^{k+2m} / (m! (k+m)!)
    double first;
    if (k == 0) {
        first = 1.0;
    } else {
        first = std::exp(k * std::log(t / 2) - std::lgamma(k + 1.0));
    }
    const double q = t * t / 4;
    double term = first, sum = first;
    for (int m = 1; m < 1000; ++m) {
        term *= q / (static_cast<double>(m) * (m + k));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double bessel_i_miller(int k, double t) {
    k = std::abs(k);
    // Backward recurrence f_{j-1} = f_{j+1} + (2j/t) f_j from a start index
    // well above both k and t, normalized via I_0 + 2*sum_{j>=1} I_j = e^t.
    const int start = std::max(k, static_cast<int>(t)) + 40 +
                      static_cast<int>(2.0 * std::sqrt(t));
    double fp = 0.0;          // f_{j+1}
    double fc = 1e-280;       // f_j (arbitrary small seed)
    double norm = 0.0;        // accumulates f_0 + 2*sum f_j
    double fk = 0.0;
    for (int j = start; j >= 1; --j) {
        const double fm = fp + (2.0 * j / t) * fc;
        norm += 2.0 * fc;
        if (j == k) fk = fc;
        fp = fc;
        fc = fm;
        if (std::abs(fc) > 1e250) {  // rescale to avoid overflow
            fp /= 1e250;
            fc /= 1e250;
            norm /= 1e250;
            fk /= 1e250;
        }
    }
    norm += fc;  // f_0
    if (k == 0) fk = fc;
    // I_k = f_k * e^t / norm, evaluated in log space to survive large t.
    return fk / norm * std::exp(t);
}

}  // namespace detail

double bessel_i(int k, double t) {
    if (t < 0.0) throw std::domain_error("bessel_i: t must be nonnegative");
    if (t <= 30.0) return detail::bessel_i_series(k, t);
    return detail::bessel_i_miller(k, t);
}

namespace {

// Maclaurin series for Ai and Ai' via the two standard solutions
// f = 1 + x^3/6 + ..., g = x + x^4/12 + ...; long double accumulation
// keeps the cancellation on [-7.5, 0] below ~1e-13.
void airy_maclaurin(double x, double* ai, double* aip) {
    const long double c1 = 0.35502805388781723926L;   // Ai(0)
    const long double c2 = -0.25881940379280679841L;  // Ai'(0)
    const long double x3 = static_cast<long double>(x) * x * x;
    long double a = 1.0L, b = x;                 // f, g terms
    long double p = 0.5L * x * x, q = 1.0L;      // f', g' terms
    long double f = a, g = b, fp = p, gp = q;
    for (int k = 0; k < 200; ++k) {
        const long double k3 = 3.0L * k;
        a *= x3 / ((k3 + 2) * (k3 + 3));
        b *= x3 / ((k3 + 3) * (k3 + 4));
        q *= x3 / ((k3 + 1) * (k3 + 3));
        p *= x3 * (k + 2) / ((k + 1) * (k3 + 5) * (k3 + 6));
        f += a;
        g += b;
        fp += p;
        gp += q;
        if (std::abs(static_cast<double>(a)) < 1e-20 &&
            std::abs(static_cast<double>(b)) < 1e-20)
            break;
    }
    if (ai) *ai = static_cast<double>(c1 * f + c2 * g);
    if (aip) *aip = static_cast<double>(c1 * fp + c2 * gp);
}

// Asymptotic series coefficients u_k (DLMF 9.7): u_0 = 1,
// u_{k+1}/u_k = (3k+1/2)(3k+3/2)(3k+5/2) / (54 (k+1)(k+1/2)).
// Sums sum (-1)^k u_k z^{-k} and the v_k analogue for Ai'.
void airy_asymptotic_sums(double z, double* su_alt, double* sv_alt,
                          double* su_even, double* su_odd, double* sv_even,
                          double* sv_odd) {
    double u = 1.0;
    double se = 0.0, so = 0.0, sa = 0.0;
    double sve = 0.0, svo = 0.0, sva = 0.0;
    double zp = 1.0;
    double prev = 1e300;
    for (int k = 0; k < 40; ++k) {
        const double v = u * (6.0 * k + 1) / (1.0 - 6.0 * k);
        const double tu = u / zp;
        if (std::abs(tu) > prev) break;  // divergent tail reached
        prev = std::abs(tu);
        const double tv = v / zp;
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        sa += sgn * tu;
        sva += sgn * tv;
        if (k % 2 == 0) {
            const double s2 = (k / 2 % 2 == 0) ? 1.0 : -1.0;
            se += s2 * tu;
            sve += s2 * tv;
        } else {
            const double s2 = ((k - 1) / 2 % 2 == 0) ? 1.0 : -1.0;
            so += s2 * tu;
            svo += s2 * tv;
        }
        u *= (3 * k + 0.5) * (3 * k + 1.5) * (3 * k + 2.5) /
             (54.0 * (k + 1) * (k + 0.5));
        zp *= z;
    }
    if (su_alt) *su_alt = sa;
    if (sv_alt) *sv_alt = sva;
    if (su_even) *su_even = se;
    if (su_odd) *su_odd = so;
    if (sv_even) *sv_even = sve;
    if (sv_odd) *sv_odd = svo;
}

constexpr double kSqrtPi = 1.7724538509055160273;

}  // namespace

double airy_ai(double x) {
    if (x >= -7.5 && x <= 6.5) {
        double ai;
        airy_maclaurin(x, &ai, nullptr);
        return ai;
    }
    if (x > 6.5) {
        const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
        double sa;
        airy_asymptotic_sums(zeta, &sa, nullptr, nullptr, nullptr, nullptr,
                             nullptr);
        return std::exp(-zeta) / (2.0 * kSqrtPi * std::pow(x, 0.25)) * sa;
    }
    // oscillatory region x < -7.5  (DLMF 9.7.9)
    const double z = -x;
    const double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    double se, so;
    airy_asymptotic_sums(zeta, nullptr, nullptr, &se, &so, nullptr, nullptr);
    const double ph = zeta - M_PI / 4;
    return (std::cos(ph) * se + std::sin(ph) * so) /
           (kSqrtPi * std::pow(z, 0.25));
}

double airy_ai_prime(double x) {
    if (x >= -7.5 && x <= 6.5) {
        double aip;
        airy_maclaurin(x, nullptr, &aip);
        return aip;
    }
    if (x > 6.5) {
        const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
        double sva;
        airy_asymptotic_sums(zeta, nullptr, &sva, nullptr, nullptr, nullptr,
                             nullptr);
        return -std::pow(x, 0.25) * std::exp(-zeta) / (2.0 * kSqrtPi) * sva;
    }
    const double z = -x;
    const double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    double sve, svo;
    airy_asymptotic_sums(zeta, nullptr, nullptr, nullptr, nullptr, &sve, &svo);
    const double ph = zeta - M_PI / 4;
    return std::pow(z, 0.25) / kSqrtPi *
           (std::sin(ph) * sve - std::cos(ph) * svo);
}

double log_gamma(double x) {
    if (x <= 0.0) throw std::domain_error("log_gamma: x must be positive");
    // Lanczos approximation, g = 7, 9 coefficients (~1e-14 relative).
    static const double c[9] = {
        0.99999999999980993,      676.5203681218851,   -1259.1392167224028,
        771.32342877765313,       -176.61502916214059, 12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6,
        1.5056327351493116e-7};
    const double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t +
           std::log(a);
}

}  // namespace xx0
