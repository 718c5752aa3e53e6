#include "limitwave/filters.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "limitwave/errors.hpp"

namespace limitwave {
namespace {

int step_dilation(const DilationSpec& spec) {
  if (spec.dim() != 1 || spec.matrix()[0][0] < 2)
    throw RepresentationMismatch("step filters need a 1-D dilation by an integer N >= 2");
  return static_cast<int>(spec.N());
}

}  // namespace

ArcSet::ArcSet() : indicator_(StepCircleFn::constant(1.0)) {}

ArcSet::ArcSet(const std::vector<std::pair<Rational, Rational>>& arcs) {
  StepCircleFn acc;
  for (const auto& [from, to] : arcs) acc = sf_add(acc, StepCircleFn::arc(from, to));
  for (const auto& v : acc.values())
    if (std::abs(v) > kZeroCoefficient && std::abs(v - 1.0) > kZeroCoefficient)
      throw std::invalid_argument("arcs of a multiplicity set must not overlap");
  indicator_ = std::move(acc);
}

ArcSet ArcSet::empty() { return ArcSet(StepCircleFn()); }

Rational ArcSet::measure() const {
  Rational m(0);
  for (std::size_t i = 0; i < indicator_.arc_count(); ++i)
    if (std::abs(indicator_.values()[i]) > 0.5) m += indicator_.arc_length(i);
  return m;
}

bool ArcSet::is_full() const { return measure() == 1; }

const LaurentPoly& Filter::laurent() const {
  if (auto* p = std::get_if<LaurentPoly>(&m)) return *p;
  throw RepresentationMismatch("filter is a step function, not a Laurent polynomial");
}

const StepCircleFn& Filter::step() const {
  if (auto* p = std::get_if<StepCircleFn>(&m)) return *p;
  throw RepresentationMismatch("filter is a Laurent polynomial, not a step function");
}

Filter make_filter(LaurentPoly m, DilationSpec spec) {
  if (m.dim() != spec.dim()) throw DimensionMismatch("filter dimension does not match dilation");
  return Filter{std::move(m), std::move(spec), std::nullopt};
}

Filter make_filter(StepCircleFn m, DilationSpec spec, std::optional<ArcSet> B) {
  step_dilation(spec);
  return Filter{std::move(m), std::move(spec), std::move(B)};
}

FilterBank::FilterBank(std::vector<LaurentPoly> members, DilationSpec s,
                       std::optional<std::size_t> lp)
    : filters(std::move(members)), spec(std::move(s)) {
  for (const auto& m : filters)
    if (m.dim() != spec.dim()) throw DimensionMismatch("bank member dimension mismatch");
  if (lp) {
    if (*lp >= filters.size()) throw std::invalid_argument("low-pass index out of range");
    low_pass = *lp;
    return;
  }
  const std::vector<double> origin(spec.dim(), 0.0);
  double best = -1.0;
  for (std::size_t a = 0; a < filters.size(); ++a) {
    const double v = std::abs(lp_eval(filters[a], origin));
    if (v > best + kZeroTolerance) {
      best = v;
      low_pass = a;
    }
  }
}

LaurentPoly verify_filter(const LaurentPoly& m, const DilationSpec& spec) {
  LaurentPoly s = lp_coset_sum(lp_mul(m, lp_conj(m)), spec);
  return lp_sub(s, LaurentPoly::constant(spec.dim(), static_cast<double>(spec.N())));
}

StepCircleFn verify_filter(const StepCircleFn& m, int N) {
  return sf_sub(sf_coset_sum(sf_abs2(m), N), StepCircleFn::constant(static_cast<double>(N)));
}

StepCircleFn verify_generalized_filter(const StepCircleFn& m, const ArcSet& B, int N) {
  const StepCircleFn target = sf_scale(sf_compose_pow(B.indicator(), N), static_cast<double>(N));
  return sf_sub(sf_coset_sum(sf_abs2(m), N), target);
}

double filter_residual(const Filter& f) {
  if (f.is_laurent()) {
    if (f.multiplicity && !f.multiplicity->is_full())
      throw RepresentationMismatch("multiplicity sets are supported for step filters only");
    return verify_filter(f.laurent(), f.spec).max_abs_coeff();
  }
  const int N = step_dilation(f.spec);
  if (f.multiplicity) return verify_generalized_filter(f.step(), *f.multiplicity, N).max_abs();
  return verify_filter(f.step(), N).max_abs();
}

BankResidual verify_filter_bank(const FilterBank& bank) {
  const std::size_t n = bank.size();
  if (static_cast<std::int64_t>(n) != bank.spec.N())
    throw std::invalid_argument("a filter bank needs exactly N members");
  BankResidual r(n, std::vector<LaurentPoly>(n, LaurentPoly(bank.spec.dim())));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      LaurentPoly s = lp_coset_sum(lp_mul(bank.filters[a], lp_conj(bank.filters[b])), bank.spec);
      if (a == b) s -= LaurentPoly::constant(bank.spec.dim(), static_cast<double>(bank.spec.N()));
      r[a][b] = std::move(s);
    }
  return r;
}

double max_residual(const BankResidual& r) {
  double m = 0.0;
  for (const auto& row : r)
    for (const auto& p : row) m = std::max(m, p.max_abs_coeff());
  return m;
}

namespace {

LaurentPoly from_dual_coefficients(std::span<const Complex> c, const DilationSpec& spec) {
  if (static_cast<std::int64_t>(c.size()) != spec.N())
    throw std::invalid_argument("coefficient vector must have N entries");
  LaurentPoly m(spec.dim());
  const auto& q = spec.dual_transversal();
  for (std::size_t j = 0; j < c.size(); ++j) m += LaurentPoly::monomial(q[j], c[j]);
  return m;
}

}  // namespace

Filter filter_from_unit_vector(std::span<const Complex> c, const DilationSpec& spec) {
  double norm2 = 0.0;
  for (auto cj : c) norm2 += std::norm(cj);
  if (std::abs(std::sqrt(norm2) - 1.0) > kZeroTolerance)
    throw NotUnitVector("coefficient vector is not a unit vector");
  return make_filter(from_dual_coefficients(c, spec), spec);
}

FilterBank bank_from_orthonormal_basis(const std::vector<std::vector<Complex>>& basis,
                                       const DilationSpec& spec) {
  const std::size_t n = basis.size();
  if (static_cast<std::int64_t>(n) != spec.N())
    throw NotOrthonormal("basis must have N vectors");
  for (std::size_t a = 0; a < n; ++a) {
    if (basis[a].size() != n) throw NotOrthonormal("basis vectors must have N entries");
    for (std::size_t b = 0; b < n; ++b) {
      Complex g{};
      for (std::size_t j = 0; j < n; ++j) g += basis[a][j] * std::conj(basis[b][j]);
      if (std::abs(g - (a == b ? 1.0 : 0.0)) > kZeroTolerance)
        throw NotOrthonormal("basis Gram matrix differs from the identity");
    }
  }
  std::vector<LaurentPoly> filters;
  for (const auto& row : basis) filters.push_back(from_dual_coefficients(row, spec));
  return FilterBank(std::move(filters), spec);
}

std::vector<Complex> coefficients_on_dual(const LaurentPoly& m, const DilationSpec& spec) {
  std::vector<Complex> c;
  for (const auto& q : spec.dual_transversal()) c.push_back(m.coeff(q));
  return c;
}

const char* to_string(Purity p) {
  switch (p) {
    case Purity::PureByComplement:
      return "PureByComplement";
    case Purity::PureByNonUnimodular:
      return "PureByNonUnimodular";
    case Purity::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

Purity purity_check(const LaurentPoly& m, const std::optional<ArcSet>& B) {
  if (B && B->measure() < 1) return Purity::PureByComplement;
  // A non-zero trigonometric polynomial vanishes only on a null set.
  const LaurentPoly defect = lp_sub(lp_mul(m, lp_conj(m)), LaurentPoly::constant(m.dim(), 1.0));
  if (defect.max_abs_coeff() > kZeroTolerance) return Purity::PureByNonUnimodular;
  return Purity::Inconclusive;
}

Purity purity_check(const StepCircleFn& m, const std::optional<ArcSet>& B) {
  if (B && B->measure() < 1) return Purity::PureByComplement;
  // Every arc has positive length, so one off-unimodular arc suffices.
  const StepCircleFn defect = sf_sub(sf_abs2(m), StepCircleFn::constant(1.0));
  if (defect.max_abs() > kZeroTolerance) return Purity::PureByNonUnimodular;
  return Purity::Inconclusive;
}

Purity purity_check(const Filter& f) {
  if (f.is_laurent()) return purity_check(f.laurent(), f.multiplicity);
  return purity_check(f.step(), f.multiplicity);
}

LowPass is_low_pass(const LaurentPoly& m, const DilationSpec& spec) {
  const std::vector<double> origin(spec.dim(), 0.0);
  const double dev = std::abs(lp_eval(m, origin) - std::sqrt(static_cast<double>(spec.N())));
  return {dev <= kZeroTolerance, dev};
}

double bank_unitarity_defect(const FilterBank& bank, int samples, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(bank.size());
  const int dim = bank.spec.dim();
  const auto pts = kernel_points(bank.spec);
  const double scale = 1.0 / std::sqrt(static_cast<double>(bank.spec.N()));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  std::vector<double> x(dim), y(dim);
  for (int s = 0; s < samples; ++s) {
    for (auto& xi : x) xi = unif(rng);
    Eigen::MatrixXcd U(n, static_cast<Eigen::Index>(pts.size()));
    for (Eigen::Index a = 0; a < n; ++a)
      for (std::size_t d = 0; d < pts.size(); ++d) {
        for (int i = 0; i < dim; ++i) y[i] = x[i] + pts[d][i];
        U(a, static_cast<Eigen::Index>(d)) = scale * lp_eval(bank.filters[a], y);
      }
    Eigen::MatrixXcd G = U * U.adjoint() - Eigen::MatrixXcd::Identity(n, n);
    worst = std::max(worst, G.cwiseAbs().maxCoeff());
  }
  return worst;
}

double parseval_frame_defect(const StepCircleFn& f, const ArcSet& B, std::int64_t M) {
  const StepCircleFn outside =
      sf_mul(f, sf_sub(StepCircleFn::constant(1.0), B.indicator()));
  if (!outside.is_zero()) throw std::invalid_argument("function is not supported in B");
  const StepCircleFn fb = sf_mul(f, B.indicator());
  double sum = 0.0;
  for (std::int64_t n = -M; n <= M; ++n) sum += std::norm(sf_fourier_coefficient(fb, n));
  return std::abs(sum - std::real(sf_inner(fb, fb)));
}

StepCircleFn random_step_function(const Rational& from, const Rational& to, int pieces,
                                  std::mt19937_64& rng) {
  if (pieces < 1 || to <= from || to - from > 1)
    throw std::invalid_argument("random_step_function: bad arc or piece count");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Rational width = (to - from) / pieces;
  StepCircleFn f;
  for (int i = 0; i < pieces; ++i) {
    const double r = std::sqrt(unif(rng));
    const double t = 2.0 * std::numbers::pi * unif(rng);
    f = sf_add(f, StepCircleFn::arc(from + width * i, from + width * (i + 1), std::polar(r, t)));
  }
  return f;
}

}  // namespace limitwave
