#include <doctest.h>

#include <random>

#include "limitwave/cascade.hpp"
#include "limitwave/errors.hpp"
#include "limitwave/filters.hpp"
#include "limitwave/fractal.hpp"
#include "oracles.hpp"

using namespace limitwave;

namespace {
const double r2 = std::sqrt(0.5);

std::vector<Complex> random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  double s = 0.0;
  for (auto& c : v) {
    c = {g(rng), g(rng)};
    s += std::norm(c);
  }
  for (auto& c : v) c /= std::sqrt(s);
  return v;
}

// sum_a |m(a k)|^2 - N at sample points, by direct evaluation.
double sampled_filter_defect(const LaurentPoly& m, int N) {
  double worst = 0.0;
  for (int i = 0; i < 97; ++i) {
    const double x = (i + 0.3) / 97.0;
    double s = 0.0;
    for (int a = 0; a < N; ++a) s += std::norm(oracle::eval1(m, x + static_cast<double>(a) / N));
    worst = std::max(worst, std::abs(s - N));
  }
  return worst;
}
}  // namespace

TEST_CASE("verify_filter examples") {
  CHECK(verify_filter(cantor_filter(), make_dilation(3)).max_abs_coeff() <= 1e-14);
  CHECK(verify_filter(LaurentPoly::constant(1, 1.0), make_dilation(2)).max_abs_coeff() <= 1e-14);
  CHECK(lp_approx_equal(verify_filter(LaurentPoly::constant(1, std::sqrt(2.0)), make_dilation(2)),
                        LaurentPoly::constant(1, 2.0), 1e-14));
  CHECK(verify_filter(haar_low_pass(), make_dilation(2)).max_abs_coeff() <= 1e-14);
  CHECK(sampled_filter_defect(cantor_filter(), 3) < 1e-12);
  // unnormalized 1 + z: coset sum of |m|^2 is 4
  const auto res = verify_filter(LaurentPoly(1, {{{0}, 1.0}, {{1}, 1.0}}), make_dilation(2));
  CHECK(res == LaurentPoly::constant(1, 2.0));
}

TEST_CASE("generalized filter, step representation") {
  const auto m = StepCircleFn::arc(Rational(-1, 6), Rational(1, 6), std::sqrt(2.0));
  const ArcSet B({{Rational(-1, 3), Rational(1, 3)}});
  CHECK(verify_generalized_filter(m, B, 2).max_abs() == 0.0);
  CHECK(verify_generalized_filter(StepCircleFn(), ArcSet::empty(), 2).max_abs() == 0.0);
  CHECK(verify_generalized_filter(StepCircleFn::arc(Rational(0), Rational(1, 2), std::sqrt(2.0)),
                                  ArcSet::full(), 2)
            .max_abs() == 0.0);
  // not a filter relative to the full circle
  CHECK(verify_generalized_filter(m, ArcSet::full(), 2).max_abs() > 1.0);
  CHECK(B.measure() == Rational(2, 3));
  CHECK_THROWS(ArcSet({{Rational(0), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}}));
}

TEST_CASE("filter banks") {
  CHECK(max_residual(verify_filter_bank(cantor_bank())) <= 1e-12);
  CHECK(cantor_bank().low_pass == 0);
  for (double r : {0.0, 0.3, 0.6, r2}) CHECK(max_residual(verify_filter_bank(r_family(r).bank)) <= 1e-12);
  CHECK(bank_unitarity_defect(cantor_bank()) < 1e-10);
  CHECK(bank_unitarity_defect(d4_bank()) < 1e-10);
  for (std::size_t a = 0; a < cantor_bank().size(); ++a)
    CHECK(filter_residual(cantor_bank().member(a)) <= 1e-12);
  // a non-bank: two copies of the low-pass
  FilterBank bad({haar_low_pass(), haar_low_pass()}, make_dilation(2), 0);
  CHECK(max_residual(verify_filter_bank(bad)) > 0.5);
  CHECK(bank_unitarity_defect(bad) > 0.1);
}

TEST_CASE("filter_from_unit_vector") {
  const auto s2 = make_dilation(2), s3 = make_dilation(3);
  const Complex e0[] = {1.0, 0.0};
  CHECK(filter_from_unit_vector(e0, s2).laurent() == LaurentPoly::constant(1, 1.0));
  const Complex h[] = {r2, r2};
  CHECK(lp_approx_equal(filter_from_unit_vector(h, s2).laurent(), haar_low_pass(), 1e-15));
  const Complex c3[] = {r2, 0.0, r2};
  CHECK(lp_approx_equal(filter_from_unit_vector(c3, s3).laurent(), cantor_filter(), 1e-15));
  const Complex bad[] = {1.0, 1.0};
  CHECK_THROWS_AS(filter_from_unit_vector(bad, s2), NotUnitVector);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t)
    for (const auto& spec : {s2, s3, make_dilation(4), make_dilation(IntMatrix{{1, 1}, {-1, 1}})}) {
      const auto c = random_unit(static_cast<int>(spec.N()), rng);
      const Filter f = filter_from_unit_vector(c, spec);
      CHECK(filter_residual(f) <= 1e-14);
      const auto back = coefficients_on_dual(f.laurent(), spec);
      for (std::size_t j = 0; j < c.size(); ++j) CHECK(std::abs(back[j] - c[j]) < 1e-15);
      if (spec.dim() == 1) CHECK(sampled_filter_defect(f.laurent(), static_cast<int>(spec.N())) < 1e-12);
    }
}

TEST_CASE("bank_from_orthonormal_basis") {
  const auto s3 = make_dilation(3);
  const auto id = bank_from_orthonormal_basis({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, s3);
  for (int q = 0; q < 3; ++q) CHECK(id.filters[q] == LaurentPoly::monomial({q}));
  CHECK(verify_cuntz(id, 8) <= 1e-12);

  const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
  const auto rot = bank_from_orthonormal_basis({{c, s}, {-s, c}}, make_dilation(2));
  CHECK(max_residual(verify_filter_bank(rot)) <= 1e-12);
  CHECK(lp_approx_equal(rot.filters[0], haar_low_pass(), 1e-15));

  // the r-family at r = 2^{-1/2} from its coefficient rows
  const auto rf = bank_from_orthonormal_basis({{r2, 0, r2}, {0, 1, 0}, {r2, 0, -r2}}, s3);
  CHECK(lp_approx_equal(rf.filters[0], cantor_filter(), 1e-15));
  CHECK(max_residual(verify_filter_bank(rf)) <= 1e-12);
  CHECK_THROWS_AS(bank_from_orthonormal_basis({{1, 0}, {1, 0}}, make_dilation(2)), NotOrthonormal);
}

TEST_CASE("purity") {
  CHECK(purity_check(LaurentPoly::monomial({3})) == Purity::Inconclusive);
  CHECK(purity_check(cantor_filter()) == Purity::PureByNonUnimodular);
  const auto m = StepCircleFn::arc(Rational(-1, 6), Rational(1, 6), std::sqrt(2.0));
  const ArcSet B({{Rational(-1, 3), Rational(1, 3)}});
  CHECK(purity_check(m, B) == Purity::PureByComplement);
  CHECK(purity_check(StepCircleFn::constant(1.0)) == Purity::Inconclusive);
  CHECK(std::string(to_string(Purity::PureByComplement)) == "PureByComplement");
}

TEST_CASE("low-pass") {
  CHECK(is_low_pass(haar_low_pass(), make_dilation(2)).low_pass);
  const auto c = is_low_pass(cantor_filter(), make_dilation(3));
  CHECK_FALSE(c.low_pass);
  CHECK(c.deviation == doctest::Approx(std::sqrt(3.0) - std::sqrt(2.0)));
  CHECK(is_low_pass(LaurentPoly::constant(1, std::sqrt(3.0)), make_dilation(3)).low_pass);
  CHECK(d4_bank().low_pass == 0);
}

TEST_CASE("Parseval frame on B") {
  const ArcSet B({{Rational(-1, 3), Rational(1, 3)}});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_step_function(Rational(-1, 3), Rational(1, 3), 3, rng);
    // independent tail: sum over |n| <= M of |integral_B f e_{-n}|^2 by closed form per arc
    double energy = 0.0, norm2 = 0.0;
    const double a[] = {-1.0 / 3, -1.0 / 9, 1.0 / 9, 1.0 / 3};
    Complex v[3];
    for (int i = 0; i < 3; ++i) {
      v[i] = f.value_at((a[i] + a[i + 1]) / 2 + (a[i] + a[i + 1] < 0 ? 1.0 : 0.0));
      norm2 += std::norm(v[i]) * (a[i + 1] - a[i]);
    }
    for (int n = -512; n <= 512; ++n) {
      Complex c{};
      for (int i = 0; i < 3; ++i) {
        if (n == 0) {
          c += v[i] * (a[i + 1] - a[i]);
        } else {
          const double w = 2 * oracle::kPi * n;
          c += v[i] * (oracle::expi(-w * a[i + 1]) - oracle::expi(-w * a[i])) / Complex(0, -w);
        }
      }
      energy += std::norm(c);
    }
    const double want = std::abs(energy - norm2);
    CHECK(parseval_frame_defect(f, B, 512) == doctest::Approx(want).epsilon(1e-6));
    CHECK(want < 1e-3);
  }
}
