#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "xx0/specfun.hpp"
#include "xx0/tracywidom.hpp"

using namespace xx0;

namespace {
const TWEvaluator& ev() {
    static TWEvaluator e;  // default [-10, 8], step 0.0025
    return e;
}
}  // namespace

TEST_CASE("hastings-mcleod boundary layer matches Ai") {
    for (double s = 6.0; s <= 8.0; s += 0.25)
        CHECK(std::abs(ev().q(s) - airy_ai(s)) <= 1e-8);
}

TEST_CASE("hastings-mcleod interior values") {
    // reference values reconstructed through the independent Fredholm
    // oracle (d^2/ds^2 log F = -q^2)
    CHECK(ev().q(0.0) == doctest::Approx(0.36706155154).epsilon(1e-6));
    const double q6 = ev().q(-6.0);
    CHECK(q6 * q6 / 3 > 0.9);
    CHECK(q6 * q6 / 3 < 1.1);
}

TEST_CASE("tw_cdf reference values") {
    CHECK(ev().cdf(ev().grid_hi()) >= 1.0 - 1e-9);
    // frozen values from the Nystrom Fredholm oracle
    CHECK(tw_cdf(0.0, ev()) ==
          doctest::Approx(0.969372828355264).epsilon(1e-8));
    CHECK(tw_cdf(-2.0, ev()) ==
          doctest::Approx(0.413224142505135).epsilon(1e-8));
    CHECK(tw_cdf(-4.0, ev()) ==
          doctest::Approx(0.00354455359551102).epsilon(1e-8));
    CHECK(tw_cdf(-6.0, ev()) ==
          doctest::Approx(1.06225467403152e-08).epsilon(1e-6));
}

TEST_CASE("fredholm oracle behavior") {
    CHECK(std::abs(tw_cdf_fredholm(8.0) - 1.0) <= 1e-10);
    CHECK(std::abs(tw_cdf_fredholm(0.0) - tw_cdf(0.0, ev())) <= 1e-6);
    const double fm1 = tw_cdf_fredholm(-1.0);
    const double f0 = tw_cdf_fredholm(0.0);
    const double fp1 = tw_cdf_fredholm(1.0);
    CHECK(fm1 < f0);
    CHECK(f0 < fp1);
    CHECK_THROWS_AS(tw_cdf_fredholm(0.0, 10), std::domain_error);
}

TEST_CASE("tail expansions") {
    CHECK(std::abs(tw_right_tail(6.0) - tw_cdf(6.0, ev())) <= 1e-9);
    const double lt = tw_left_tail(-8.0, ev().tails());
    const double pv = tw_cdf(-8.0, ev());
    CHECK(std::abs(lt - pv) / pv <= 0.02);
    CHECK(tw_right_tail(50.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(tw_right_tail(2.0), std::domain_error);
    CHECK_THROWS_AS(tw_left_tail(-2.0, ev().tails()), std::domain_error);
    // fitted prefactor should land near the known constant
    // 2^{1/24} e^{zeta'(-1)} = 0.87237141495...
    CHECK(ev().tails().c3 == doctest::Approx(0.872371414954).epsilon(1e-4));
    // delegation outside the grid
    CHECK(ev().cdf(9.0) == tw_right_tail(9.0));
    CHECK(ev().cdf(-10.5) == tw_left_tail(-10.5, ev().tails()));
}

TEST_CASE("cdf monotone and in (0,1)") {
    double prev = 0.0;
    for (double x = -9.5; x <= 7.5; x += 0.5) {
        const double f = ev().cdf(x);
        CHECK(f > 0.0);
        CHECK(f < 1.0);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("cross-method agreement at the acceptance points") {
    for (double x : {-4.0, -2.0, 0.0, 2.0, 4.0})
        CHECK(std::abs(tw_cdf(x, ev()) - tw_cdf_fredholm(x)) <= 1e-6);
}

TEST_CASE("d^2/ds^2 log F = -q^2") {
    const double h = 1e-3;
    for (double s : {-4.0, -2.0, 0.0, 1.5, 3.0}) {
        const double d2 = (std::log(ev().cdf(s - h)) -
                           2 * std::log(ev().cdf(s)) +
                           std::log(ev().cdf(s + h))) /
                          (h * h);
        const double qq = ev().q(s) * ev().q(s);
        CHECK(std::abs(d2 + qq) <= 1e-4);
    }
}

TEST_CASE("constructor input validation") {
    CHECK_THROWS_AS(TWEvaluator(-10.0, 5.0, 0.0025), std::domain_error);
    CHECK_THROWS_AS(TWEvaluator(-12.0, 8.0, 0.0025), std::domain_error);
    CHECK_THROWS_AS(TWEvaluator(-10.0, 8.0, 0.05), std::domain_error);
}
