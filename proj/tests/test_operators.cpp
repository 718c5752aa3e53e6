#include <doctest.h>

#include <random>

#include "limitwave/cascade.hpp"
#include "limitwave/errors.hpp"
#include "limitwave/fractal.hpp"
#include "limitwave/operators.hpp"
#include "oracles.hpp"

using namespace limitwave;

namespace {
const double r2 = std::sqrt(0.5);
const FilterOperator& cantor_op() {
  static const FilterOperator op(make_filter(cantor_filter(), cantor_dilation()));
  return op;
}
const FilterOperator& haar_op() {
  static const FilterOperator op(make_filter(haar_low_pass(), make_dilation(2)));
  return op;
}
}  // namespace

TEST_CASE("S_m on monomials") {
  for (int n = -4; n <= 4; ++n)
    CHECK(lp_approx_equal(apply_S(cantor_op(), LaurentPoly::monomial({n})),
                          LaurentPoly(1, {{{3 * n}, r2}, {{3 * n + 2}, r2}}), 1e-16));
  CHECK(apply_S(cantor_op(), LaurentPoly(1)).is_zero());
  CHECK(lp_approx_equal(apply_S(haar_op(), LaurentPoly::monomial({1})),
                        LaurentPoly(1, {{{2}, r2}, {{3}, r2}}), 1e-16));
}

TEST_CASE("S_m against pointwise definition") {
  std::mt19937_64 rng(5);
  const auto f = random_laurent(1, 5, rng);
  const auto Sf = apply_S(cantor_op(), f);
  for (double x : {0.03, 0.41, 0.77})
    CHECK(std::abs(oracle::eval1(Sf, x) - oracle::eval1(cantor_filter(), x) * oracle::eval1(f, std::fmod(3 * x, 1.0))) <
          1e-12);
}

TEST_CASE("adjoint") {
  // conj(m) z = 2^{-1/2}(z + 1); the coset sum keeps the constant, times 2; halved.
  CHECK(lp_approx_equal(apply_S_adjoint(haar_op(), LaurentPoly::monomial({1})), LaurentPoly::constant(1, r2), 1e-16));
  for (int n = -3; n <= 3; ++n)
    CHECK(lp_approx_equal(apply_S_adjoint(cantor_op(), LaurentPoly::monomial({3 * n})),
                          LaurentPoly::monomial({n}, r2), 1e-16));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_laurent(1, 8, rng);
    CHECK(lp_approx_equal(apply_S_adjoint(cantor_op(), apply_S(cantor_op(), f)), f, 1e-14));
  }
  CHECK(verify_adjointness(cantor_op(), 20) <= 1e-12);
  CHECK(verify_adjointness(haar_op(), 20) <= 1e-12);
}

TEST_CASE("adjoint against sampled fibre average") {
  std::mt19937_64 rng(13);
  const auto f = random_laurent(1, 6, rng);
  const auto g = apply_S_adjoint(cantor_op(), f);
  for (double x : {0.12, 0.5, 0.93}) {
    Complex s{};
    for (int j = 0; j < 3; ++j) {
      const double y = (x + j) / 3.0;
      s += std::conj(oracle::eval1(cantor_filter(), y)) * oracle::eval1(f, y);
    }
    CHECK(std::abs(oracle::eval1(g, x) - s / 3.0) < 1e-12);
  }
}

TEST_CASE("isometry") {
  CHECK(verify_isometry(cantor_op(), 20) <= 1e-12);
  CHECK(verify_isometry(haar_op(), 20) <= 1e-12);
  const FilterOperator bad(make_filter(LaurentPoly(1, {{{0}, 1.0}, {{1}, 1.0}}), make_dilation(2)), SkipValidation{});
  CHECK(verify_isometry(bad, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(FilterOperator(make_filter(LaurentPoly(1, {{{0}, 1.0}, {{1}, 1.0}}), make_dilation(2))),
                  InvalidFilter);
}

TEST_CASE("Cuntz relation") {
  CHECK(verify_cuntz(cantor_bank(), 32) <= 1e-12);
  CHECK(verify_cuntz(haar_bank(), 16) <= 1e-12);
  CHECK(verify_cuntz(d4_bank(), 16) <= 1e-12);
  const FilterOperator single[] = {haar_op()};
  CHECK(verify_cuntz(single, 1) == doctest::Approx(0.5));
  const auto q = bank_from_orthonormal_basis({{r2, r2}, {r2, -r2}}, make_dilation(IntMatrix{{1, 1}, {-1, 1}}));
  CHECK(verify_cuntz(q, 4) <= 1e-12);
}

TEST_CASE("covariance and range orthogonality") {
  for (int g = -5; g <= 5; ++g)
    for (int n = -3; n <= 3; ++n) {
      const auto en = LaurentPoly::monomial({n});
      CHECK(lp_approx_equal(apply_S(cantor_op(), lp_shift(en, {g})),
                            lp_shift(apply_S(cantor_op(), en), {3 * g}), 1e-16));
    }
  const auto bank = cantor_bank();
  std::vector<FilterOperator> ops;
  for (std::size_t a = 0; a < bank.size(); ++a) ops.emplace_back(bank.member(a));
  double worst = 0.0;
  for (std::size_t a = 0; a < ops.size(); ++a)
    for (std::size_t b = 0; b < ops.size(); ++b)
      for (int j = -8; j <= 8; ++j)
        for (int k = -8; k <= 8; ++k) {
          const Complex ip = lp_inner(apply_S(ops[a], LaurentPoly::monomial({j})), apply_S(ops[b], LaurentPoly::monomial({k})));
          worst = std::max(worst, std::abs(ip - (a == b && j == k ? 1.0 : 0.0)));
        }
  CHECK(worst <= 1e-12);
}

TEST_CASE("step-function operator") {
  const auto m = StepCircleFn::arc(Rational(-1, 6), Rational(1, 6), std::sqrt(2.0));
  const ArcSet B({{Rational(-1, 3), Rational(1, 3)}});
  const FilterOperator op(make_filter(m, make_dilation(2), B));
  const auto f = StepCircleFn::arc(Rational(-1, 3), Rational(0), 1.0);
  const auto Sf = apply_S(op, f);
  for (int i = 0; i < 24; ++i) {
    const double x = (i + 0.5) / 24;
    CHECK(std::abs(Sf.value_at(x) - m.value_at(x) * f.value_at(std::fmod(2 * x, 1.0))) < 1e-15);
  }
  // isometric on L^2(B)
  CHECK(std::abs(sf_inner(Sf, Sf) - sf_inner(f, f)) < 1e-15);
  CHECK(sf_approx_equal(apply_S_adjoint(op, Sf), f, 1e-15));
  CHECK_THROWS_AS(apply_S(op, LaurentPoly::monomial({1})), RepresentationMismatch);
}
