#include "limitwave/direct_limit.hpp"

#include <cmath>

#include "limitwave/errors.hpp"

namespace limitwave {
namespace {

void require_same_context(const LimitVector& v, const LimitVector& w) {
  if (!v.context || !w.context) throw ContextMismatch("limit vector without context");
  if (v.context != w.context && !v.context->same_as(*w.context))
    throw ContextMismatch("limit vectors belong to different filters");
}

void guard_support(const LaurentPoly& f) {
  if (f.size() > kMaxSupport) throw SupportOverflow("representative exceeds 10^6 coefficients");
}

// All multi-indices of [-K, K]^n, first coordinate fastest.
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

OperatorPtr make_context(const Filter& m) { return std::make_shared<const FilterOperator>(m); }

LimitVector make_limit_vector(OperatorPtr ctx, int level, LaurentPoly rep) {
  if (!ctx) throw ContextMismatch("missing context");
  if (level < 0 || level > kMaxLevel) throw ParameterOutOfRange("level outside [0, 64]");
  if (rep.dim() != ctx->spec().dim()) throw DimensionMismatch("representative dimension mismatch");
  return LimitVector{level, std::move(rep), std::move(ctx)};
}

LimitVector promote(const LimitVector& v, int target_level) {
  if (target_level < v.level) throw LevelTooLow("cannot promote to a lower level");
  if (target_level > kMaxLevel) throw SupportOverflow("level cap of 64 exceeded");
  LimitVector out = v;
  for (; out.level < target_level; ++out.level) {
    out.rep = apply_S(*out.context, out.rep);
    guard_support(out.rep);
  }
  return out;
}

Complex limit_inner(const LimitVector& v, const LimitVector& w) {
  require_same_context(v, w);
  const int level = std::max(v.level, w.level);
  return lp_inner(promote(v, level).rep, promote(w, level).rep);
}

double limit_norm(const LimitVector& v) { return std::sqrt(std::real(limit_inner(v, v))); }

bool limit_equal(const LimitVector& v, const LimitVector& w, double tol) {
  require_same_context(v, w);
  const int level = std::max(v.level, w.level);
  const LaurentPoly a = promote(v, level).rep;
  const LaurentPoly b = promote(w, level).rep;
  return tol == 0.0 ? a == b : lp_approx_equal(a, b, tol);
}

LimitVector apply_S_infinity(const LimitVector& v) {
  LimitVector out = v;
  if (out.level >= 1)
    --out.level;
  else
    out.rep = apply_S(*out.context, out.rep);
  return out;
}

LimitVector apply_S_infinity_inverse(const LimitVector& v) {
  if (v.level >= kMaxLevel) throw SupportOverflow("level cap of 64 exceeded");
  LimitVector out = v;
  ++out.level;
  return out;
}

LimitVector apply_S_infinity_power(const LimitVector& v, int j) {
  LimitVector out = v;
  for (; j > 0; --j) out = apply_S_infinity(out);
  for (; j < 0; ++j) out = apply_S_infinity_inverse(out);
  return out;
}

LimitVector apply_mu_infinity(const MultiIndex& gamma, const LimitVector& v) {
  const auto& spec = v.context->spec();
  if (static_cast<int>(gamma.size()) != spec.dim()) throw DimensionMismatch("gamma dimension");
  LimitVector out = v;
  out.rep = lp_shift(v.rep, spec.apply_power(gamma, v.level));
  return out;
}

std::vector<LimitVector> wavelet_generators(const FilterBank& bank) {
  return wavelet_generators(bank, make_context(bank.member(bank.low_pass)));
}

std::vector<LimitVector> wavelet_generators(const FilterBank& bank, OperatorPtr ctx) {
  const FilterOperator low(bank.member(bank.low_pass), SkipValidation{});
  if (!ctx || !ctx->same_as(low)) throw ContextMismatch("context is not the bank's low-pass filter");
  std::vector<LimitVector> gens;
  for (std::size_t b = 0; b < bank.size(); ++b)
    if (b != bank.low_pass) gens.push_back(make_limit_vector(ctx, 1, bank.filters[b]));
  return gens;
}

std::vector<LimitVector> wavelet_family(const std::vector<LimitVector>& gens, int J, int K) {
  std::vector<LimitVector> out;
  if (gens.empty()) return out;
  const int n = gens.front().context->spec().dim();
  const auto shifts = index_box(n, K);
  for (int j = -J; j <= J; ++j)
    for (const auto& k : shifts)
      for (const auto& psi : gens) out.push_back(apply_S_infinity_power(apply_mu_infinity(k, psi), -j));
  return out;
}

Eigen::MatrixXcd gram_matrix(const std::vector<LimitVector>& vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXcd G(n, n);
  if (n == 0) return G;
  int level = 0;
  for (const auto& v : vectors) {
    require_same_context(vectors.front(), v);
    level = std::max(level, v.level);
  }
  std::vector<LaurentPoly> reps;
  reps.reserve(vectors.size());
  for (const auto& v : vectors) reps.push_back(promote(v, level).rep);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      G(i, j) = lp_inner(reps[i], reps[j]);
      G(j, i) = std::conj(G(i, j));
    }
  return G;
}

GramDeviation gram_deviation(const Eigen::MatrixXcd& G) {
  GramDeviation d;
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j) {
      if (i == j)
        d.diagonal = std::max(d.diagonal, std::abs(G(i, j) - 1.0));
      else
        d.off_diagonal = std::max(d.off_diagonal, std::abs(G(i, j)));
    }
  return d;
}

}  // namespace limitwave
