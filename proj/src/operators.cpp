#include "limitwave/operators.hpp"

#include <cmath>
#include <numbers>

#include "limitwave/errors.hpp"

namespace limitwave {
namespace {

constexpr double kValidationTolerance = 1e-10;

int step_N(const FilterOperator& op) {
  const auto& spec = op.spec();
  if (spec.dim() != 1) throw RepresentationMismatch("step functions live on the circle only");
  return static_cast<int>(spec.N());
}

// All multi-indices of [-K, K]^n.
std::vector<MultiIndex> index_box(int n, int K) {
  std::vector<MultiIndex> out;
  MultiIndex k(n, -K);
  while (true) {
    out.push_back(k);
    int i = 0;
    while (i < n && k[i] == K) k[i++] = -K;
    if (i == n) break;
    ++k[i];
  }
  return out;
}

}  // namespace

FilterOperator::FilterOperator(Filter f) : filter_(std::move(f)) {
  const double r = filter_residual(filter_);
  if (!(r <= kValidationTolerance))
    throw InvalidFilter("filter equation residual " + std::to_string(r));
}

FilterOperator::FilterOperator(Filter f, SkipValidation) : filter_(std::move(f)) {}

bool FilterOperator::same_as(const FilterOperator& other) const {
  return filter_.m == other.filter_.m && filter_.spec == other.filter_.spec;
}

LaurentPoly apply_S(const FilterOperator& op, const LaurentPoly& f) {
  if (f.dim() != op.spec().dim()) throw DimensionMismatch("apply_S: dimension mismatch");
  return lp_mul(op.filter().laurent(), lp_compose_beta(f, op.spec()));
}

StepCircleFn apply_S(const FilterOperator& op, const StepCircleFn& f) {
  const int N = step_N(op);
  return sf_mul(op.filter().step(), sf_compose_pow(f, N));
}

LaurentPoly apply_S_adjoint(const FilterOperator& op, const LaurentPoly& f) {
  if (f.dim() != op.spec().dim()) throw DimensionMismatch("apply_S_adjoint: dimension mismatch");
  const auto& spec = op.spec();
  LaurentPoly g = lp_coset_sum(lp_mul(lp_conj(op.filter().laurent()), f), spec);
  g *= 1.0 / static_cast<double>(spec.N());
  return lp_decimate(g, spec);
}

StepCircleFn apply_S_adjoint(const FilterOperator& op, const StepCircleFn& f) {
  const int N = step_N(op);
  const StepCircleFn& m = op.filter().step();
  return sf_scale(sf_fibre_sum(sf_mul(sf_conj(m), f), N), 1.0 / N);
}

double verify_cuntz(std::span<const FilterOperator> ops, int K) {
  if (ops.empty()) return 0.0;
  const int n = ops.front().spec().dim();
  double worst = 0.0;
  for (const auto& k : index_box(n, K)) {
    const LaurentPoly ek = LaurentPoly::monomial(k);
    LaurentPoly acc(n);
    for (const auto& op : ops) acc += apply_S(op, apply_S_adjoint(op, ek));
    acc -= ek;
    worst = std::max(worst, acc.max_abs_coeff());
  }
  return worst;
}

double verify_cuntz(const FilterBank& bank, int K) {
  std::vector<FilterOperator> ops;
  for (std::size_t a = 0; a < bank.size(); ++a)
    ops.emplace_back(bank.member(a), SkipValidation{});
  return verify_cuntz(ops, K);
}

LaurentPoly random_laurent(int dim, int radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  LaurentPoly::CoeffMap c;
  for (auto& k : index_box(dim, radius)) {
    const double r = std::sqrt(unif(rng));
    const double t = 2.0 * std::numbers::pi * unif(rng);
    c.emplace(std::move(k), std::polar(r, t));
  }
  return LaurentPoly(dim, std::move(c));
}

double verify_isometry(const FilterOperator& op, int trials, std::uint64_t seed) {
  const int n = op.spec().dim();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    LaurentPoly f = LaurentPoly::constant(n, 1.0), g = f;
    if (t > 0) {
      f = random_laurent(n, 8, rng);
      g = random_laurent(n, 8, rng);
    }
    const Complex lhs = lp_inner(apply_S(op, f), apply_S(op, g));
    worst = std::max(worst, std::abs(lhs - lp_inner(f, g)));
  }
  return worst;
}

double verify_adjointness(const FilterOperator& op, int trials, std::uint64_t seed) {
  const int n = op.spec().dim();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const LaurentPoly f = random_laurent(n, 8, rng);
    const LaurentPoly g = random_laurent(n, 8, rng);
    const Complex lhs = lp_inner(apply_S(op, f), g);
    const Complex rhs = lp_inner(f, apply_S_adjoint(op, g));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace limitwave
