#include <doctest.h>

#include <random>

#include "limitwave/dilation.hpp"
#include "limitwave/errors.hpp"
#include "limitwave/operators.hpp"
#include "limitwave/torus_fn.hpp"
#include "oracles.hpp"

using namespace limitwave;

namespace {
const double r2 = std::sqrt(0.5);

LaurentPoly lp1(std::initializer_list<std::pair<std::int64_t, Complex>> terms) {
  LaurentPoly::CoeffMap m;
  for (const auto& [k, c] : terms) m[{k}] += c;
  return LaurentPoly(1, m);
}
}  // namespace

TEST_CASE("Laurent arithmetic is structural") {
  const auto f = lp1({{0, 1.0}, {1, 2.0}});
  const auto g = lp1({{1, -2.0}, {3, 1.0}});
  CHECK(lp_add(f, g) == lp1({{0, 1.0}, {3, 1.0}}));
  CHECK(lp_sub(f, f).is_zero());
  CHECK(lp_mul(lp1({{1, 1.0}}), lp1({{-1, 1.0}})) == LaurentPoly::constant(1, 1.0));
  CHECK(lp_conj(lp1({{2, Complex(0, 1)}})) == lp1({{-2, Complex(0, -1)}}));
  CHECK(lp_shift(f, {3}) == lp1({{3, 1.0}, {4, 2.0}}));
  CHECK(f.radius() == 1);
  CHECK(LaurentPoly(1, {{{5}, 1e-15}}).is_zero());
}

TEST_CASE("inner product against sampled integral") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_laurent(1, 6, rng), g = random_laurent(1, 6, rng);
    const Complex want = oracle::circle_mean(
        [&](double x) { return oracle::eval1(f, x) * std::conj(oracle::eval1(g, x)); }, 64);
    CHECK(std::abs(lp_inner(f, g) - want) < 1e-12);
    CHECK(std::abs(lp_eval(f, 0.37) - oracle::eval1(f, 0.37)) < 1e-12);
  }
}

TEST_CASE("compose with beta and coset sum") {
  const auto spec = make_dilation(3);
  const auto f = lp1({{1, 1.0}, {-2, 2.0}});
  CHECK(lp_compose_beta(f, spec) == lp1({{3, 1.0}, {-6, 2.0}}));
  // coset sum: N times the coefficients on 3Z.
  const auto h = lp1({{0, 1.0}, {1, 5.0}, {3, 2.0}, {-3, 1.0}});
  CHECK(lp_coset_sum(h, spec) == lp1({{0, 3.0}, {3, 6.0}, {-3, 3.0}}));
  // against evaluation at the kernel points
  for (double x : {0.1, 0.44, 0.91}) {
    Complex s{};
    for (int j = 0; j < 3; ++j) s += oracle::eval1(h, x + j / 3.0);
    CHECK(std::abs(lp_eval(lp_coset_sum(h, spec), x) - s) < 1e-12);
  }
  CHECK(lp_decimate(lp1({{3, 1.0}, {-6, 2.0}}), spec) == f);
  CHECK_THROWS_AS(lp_decimate(lp1({{1, 1.0}}), spec), InternalError);
}

TEST_CASE("2-D compose with quincunx") {
  const auto spec = make_dilation(IntMatrix{{1, 1}, {-1, 1}});
  const auto f = LaurentPoly::monomial({1, 0});
  // coefficient moves to A k = (1, -1)
  CHECK(lp_compose_beta(f, spec) == LaurentPoly::monomial({1, -1}));
  std::vector<double> x{0.2, 0.7};
  const auto y = spec.transpose_apply(x);
  CHECK(std::abs(oracle::eval(lp_compose_beta(f, spec), x) - oracle::eval(f, y)) < 1e-12);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-1/3") == Rational(-1, 3));
  CHECK(parse_rational("2") == Rational(2));
  CHECK(to_string(Rational(5, 6)) == "5/6");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("step functions") {
  const auto f = StepCircleFn::arc(Rational(-1, 6), Rational(1, 6), std::sqrt(2.0));
  CHECK(f.value_at(Rational(0)) == Complex(std::sqrt(2.0)));
  CHECK(f.value_at(Rational(1, 2)) == Complex(0.0));
  CHECK(f.value_at(Rational(11, 12)) == Complex(std::sqrt(2.0)));
  CHECK(std::abs(sf_integral(f) - std::sqrt(2.0) / 3.0) < 1e-15);

  SUBCASE("constant and arc edge cases") {
    CHECK(StepCircleFn::arc(Rational(0), Rational(1), 2.0) == StepCircleFn::constant(2.0));
    CHECK(StepCircleFn::arc(Rational(1, 3), Rational(1, 3)).is_zero());
  }
  SUBCASE("compose and coset sum pointwise") {
    const auto g = sf_abs2(f);
    const auto c = sf_coset_sum(g, 2);
    const auto fs = sf_fibre_sum(g, 2);
    for (int i = 0; i < 48; ++i) {
      const Rational x(2 * i + 1, 96);
      CHECK(sf_compose_pow(f, 2).value_at(x) == f.value_at(Rational(2) * x - (Rational(2) * x >= 1 ? 1 : 0)));
      const double xd = x.convert_to<double>();
      const Complex want = g.value_at(std::fmod(xd, 1.0)) + g.value_at(std::fmod(xd + 0.5, 1.0));
      CHECK(std::abs(c.value_at(x) - want) < 1e-15);
      const Complex want_f = g.value_at(xd / 2) + g.value_at((xd + 1) / 2);
      CHECK(std::abs(fs.value_at(x) - want_f) < 1e-15);
    }
    CHECK(sf_approx_equal(c, sf_compose_pow(fs, 2), 0.0));
    // fibre sum of |m|^2 is 2 chi_{(-1/3,1/3)}
    CHECK(sf_approx_equal(fs, StepCircleFn::arc(Rational(-1, 3), Rational(1, 3), 2.0), 1e-15));
  }
  SUBCASE("fourier coefficient of an arc") {
    // integral over [-1/6,1/6) of e^{-2 pi i n x} = sin(pi n / 3) / (pi n)
    for (int n = 1; n < 6; ++n) {
      const double want = std::sqrt(2.0) * std::sin(oracle::kPi * n / 3.0) / (oracle::kPi * n);
      CHECK(std::abs(sf_fourier_coefficient(f, n) - want) < 1e-14);
    }
  }
  SUBCASE("invalid construction") {
    CHECK_THROWS(StepCircleFn({Rational(1, 2)}, {1.0}));
    CHECK_THROWS(StepCircleFn({Rational(0), Rational(1, 2)}, {1.0}));
  }
}

TEST_CASE("from_coefficients") {
  const Complex c[] = {r2, 0.0, r2};
  CHECK(LaurentPoly::from_coefficients(c) == lp1({{0, r2}, {2, r2}}));
  CHECK(LaurentPoly::from_coefficients(c, -1) == lp1({{-1, r2}, {1, r2}}));
}
