#include <doctest.h>

#include <random>

#include "limitwave/errors.hpp"
#include "limitwave/fractal.hpp"
#include "limitwave/solenoid.hpp"
#include "oracles.hpp"

using namespace limitwave;

namespace {
const SolenoidCtx& cantor() {
  static const SolenoidCtx ctx(make_filter(cantor_filter(), cantor_dilation()));
  return ctx;
}
const SolenoidCtx& haar() {
  static const SolenoidCtx ctx(make_filter(haar_low_pass(), make_dilation(2)));
  return ctx;
}
}  // namespace

TEST_CASE("tau integrals") {
  for (int k = -3; k <= 3; ++k)
    CHECK(tau_integral(cantor(), {0, LaurentPoly::monomial({k})}) == Complex(k == 0 ? 1.0 : 0.0));
  CHECK(std::abs(tau_integral(cantor(), {1, LaurentPoly::monomial({2})}) - 0.5) < 1e-15);
  for (int n = 0; n <= 6; ++n) {
    CHECK(std::abs(tau_integral(cantor(), {n, LaurentPoly::constant(1, 1.0)}) - 1.0) <= 1e-12);
    CHECK(std::abs(tau_integral(haar(), {n, LaurentPoly::constant(1, 1.0)}) - 1.0) <= 1e-12);
  }
  std::mt19937_64 rng(31);
  for (int n = 0; n <= 3; ++n) {
    const auto g = random_laurent(1, 5, rng);
    CHECK(std::abs(tau_integral(cantor(), {n, g}) - oracle::tau_by_sampling(cantor_filter(), 3, g, n, 256)) < 1e-12);
    CHECK(std::abs(tau_integral(haar(), {n, g}) - oracle::tau_by_sampling(haar_low_pass(), 2, g, n, 64)) < 1e-12);
    const Complex pos = tau_integral(cantor(), {n, lp_mul(g, lp_conj(g))});
    CHECK(pos.real() >= 0.0);
    CHECK(std::abs(pos.imag()) < 1e-14);
  }
}

TEST_CASE("consistency and Dutkay formula") {
  CHECK(check_consistency(cantor(), LaurentPoly::constant(1, 1.0), 0) <= 1e-15);
  for (int n = 0; n <= 6; ++n)
    for (int k = -12; k <= 12; ++k) CHECK(check_consistency(cantor(), LaurentPoly::monomial({k}), n) <= 1e-12);
  std::mt19937_64 rng(32);
  for (int n = 0; n <= 6; ++n) CHECK(check_consistency(haar(), random_laurent(1, 12, rng), n) <= 1e-12);
  CHECK(check_dutkay_formula(cantor(), LaurentPoly::monomial({3}), 2) <= 1e-12);
  for (int n = 0; n <= 3; ++n) CHECK(check_dutkay_formula(haar(), random_laurent(1, 6, rng), n) <= 1e-12);
  CHECK(std::abs(dutkay_fibre_integral(cantor(), LaurentPoly::monomial({2}), 1) - 0.5) < 1e-12);
}

TEST_CASE("raise and canonical equality") {
  const CylinderFn c{1, LaurentPoly::monomial({2})};
  const auto r = raise(cantor(), c, 3);
  CHECK(r.level == 3);
  CHECK(r.g == LaurentPoly::monomial({18}));
  CHECK_THROWS_AS(raise(cantor(), r, 1), LevelTooLow);
  CHECK(std::abs(tau_integral(cantor(), r) - tau_integral(cantor(), c)) < 1e-14);
}

TEST_CASE("V_infinity") {
  const auto v0 = V_infinity(cantor(), {0, LaurentPoly::constant(1, 1.0)});
  CHECK(v0.level == 0);
  CHECK(v0.rep == LaurentPoly::constant(1, 1.0));
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> lvl(0, 3);
  for (int t = 0; t < 20; ++t) {
    const CylinderFn a{lvl(rng), random_laurent(1, 3, rng)}, b{lvl(rng), random_laurent(1, 3, rng)};
    const auto va = V_infinity(cantor(), a), vb = V_infinity(cantor(), b);
    CHECK(std::abs(limit_inner(va, vb) - tau_inner(cantor(), a, b)) <= 1e-12);
    CHECK(limit_equal(va, V_infinity(cantor(), raise(cantor(), a, a.level + 1)), 1e-14));
    CHECK(limit_equal(V_infinity(cantor(), dilation_on_cylinders(cantor(), a)), apply_S_infinity(va), 1e-14));
    for (int g = -2; g <= 2; ++g)
      CHECK(limit_equal(V_infinity(cantor(), translation_on_cylinders(cantor(), {g}, a)),
                        apply_mu_infinity({g}, va), 1e-14));
    const auto da = dilation_on_cylinders(cantor(), a);
    CHECK(std::abs(std::sqrt(tau_inner(cantor(), da, da).real()) - std::sqrt(tau_inner(cantor(), a, a).real())) <= 1e-12);
  }
  const auto d0 = dilation_on_cylinders(cantor(), {0, LaurentPoly::constant(1, 1.0)});
  CHECK(d0.level == 0);
  CHECK(lp_approx_equal(d0.g, cantor_filter(), 0.0));
  const CylinderFn c{2, LaurentPoly::monomial({1})};
  CHECK(translation_on_cylinders(cantor(), {0}, c).g == c.g);
}

TEST_CASE("Dutkay transform") {
  const auto rep = dutkay_transform_check(4, 6);
  CHECK(rep.chi_c == 0.0);
  CHECK(rep.gram <= 1e-12);
  CHECK(rep.covariance <= 1e-12);
  CHECK(tri_approx_equal(R_infinity(V_infinity(cantor(), {0, LaurentPoly::constant(1, 1.0)})),
                         TriadicFn::piece(0, 0), 0.0));
}

TEST_CASE("winding line") {
  CHECK(std::abs(winding_eval({0, LaurentPoly::monomial({1})}, 0.25, 2) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(winding_eval({1, LaurentPoly::monomial({1})}, 1.0, 3) - oracle::expi(2 * oracle::kPi / 3)) < 1e-15);
  std::mt19937_64 rng(34);
  for (int t = 0; t < 10; ++t) {
    const CylinderFn c{t % 3, random_laurent(1, 3, rng)};
    const double x = std::uniform_real_distribution<double>(-10, 10)(rng);
    CHECK(std::abs(winding_eval(c, x, 2) - winding_eval(raise(haar(), c, c.level + 1), x, 2)) < 1e-12);
  }

  const auto phi = scaling_function(haar_low_pass(), make_dilation(2), {20, 64.0, 1.0 / 256});
  for (int k = -4; k <= 4; ++k) {
    const auto w = winding_check(haar(), {0, LaurentPoly::monomial({k})}, phi, Quadrature::SimpsonTailExtrapolated);
    CHECK(w.applicable());
    CHECK(std::abs(w.numeric - (k == 0 ? 1.0 : 0.0)) <= 1e-4);
  }
  const auto two = winding_check(haar(), {2, LaurentPoly::monomial({1})}, phi);
  CHECK(two.deviation <= 1e-3);
  const auto mass = winding_check(haar(), {1, LaurentPoly::constant(1, 1.0)}, phi, Quadrature::SimpsonTailExtrapolated);
  CHECK(std::abs(mass.numeric - 1.0) <= 1e-4);
  // plain Simpson is limited by the sinc^2 tail, about 1/(pi^2 T)
  const auto plain = winding_check(haar(), {0, LaurentPoly::constant(1, 1.0)}, phi);
  CHECK(plain.deviation == doctest::Approx(1.0 / (oracle::kPi * oracle::kPi * 64)).epsilon(0.05));
  CHECK(std::string(to_string(Quadrature::Simpson)) == "simpson");
}

TEST_CASE("winding check reports inapplicable contexts") {
  const auto phi = scaling_function(cantor_filter(), cantor_dilation(), {10, 9.0, 1.0 / 9});
  const auto w = winding_check(cantor(), {0, LaurentPoly::constant(1, 1.0)}, phi);
  CHECK_FALSE(w.applicable());
  CHECK_FALSE(w.low_pass);
}
