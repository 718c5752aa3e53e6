#include "limitwave/fractal.hpp"

#include <cmath>
#include <random>

#include "limitwave/errors.hpp"

namespace limitwave {
namespace {

const double kRootHalf = std::sqrt(0.5);
const double kRootTwo = std::sqrt(2.0);

std::int64_t mod3(std::int64_t k) { return ((k % 3) + 3) % 3; }

std::int64_t pow3(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) {
    if (p > std::numeric_limits<std::int64_t>::max() / 3) throw SupportOverflow("3^n overflows");
    p *= 3;
  }
  return p;
}

std::pair<TriadicFn, TriadicFn> at_common_level(const TriadicFn& f, const TriadicFn& g) {
  if (f.is_zero() || g.is_zero()) return {f, g};
  const int l = std::max(f.level(), g.level());
  return {refine(f, l), refine(g, l)};
}

}  // namespace

TriadicFn::TriadicFn(int level, Terms terms) : level_(level), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kZeroCoefficient; });
  if (terms_.empty()) level_ = kNoLevel;
}

TriadicFn TriadicFn::piece(int n, std::int64_t k, Complex c) { return TriadicFn(n, {{k, c}}); }

Complex TriadicFn::coeff(std::int64_t k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Complex{} : it->second;
}

TriadicFn refine(const TriadicFn& f, int level) {
  if (f.is_zero()) return f;
  if (level < f.level()) throw LevelTooLow("refine target is below the current level");
  TriadicFn::Terms cur = f.terms();
  for (int l = f.level(); l < level; ++l) {
    if (cur.size() > kMaxSupport / 2) throw SupportOverflow("refinement exceeds 10^6 terms");
    TriadicFn::Terms next;
    for (const auto& [k, c] : cur) {
      next.emplace(3 * k, c);
      next.emplace(3 * k + 2, c);
    }
    cur = std::move(next);
  }
  return TriadicFn(level, std::move(cur));
}

TriadicFn reduce(const TriadicFn& f) {
  TriadicFn cur = f;
  while (!cur.is_zero()) {
    TriadicFn::Terms coarse;
    bool ok = true;
    for (const auto& [k, c] : cur.terms()) {
      const std::int64_t r = mod3(k);
      if (r == 1) {
        ok = false;
        break;
      }
      const std::int64_t sibling = r == 0 ? k + 2 : k - 2;
      if (std::abs(cur.coeff(sibling) - c) > kZeroCoefficient) {
        ok = false;
        break;
      }
      if (r == 0) coarse.emplace((k - r) / 3, c);
    }
    if (!ok) break;
    cur = TriadicFn(cur.level() - 1, std::move(coarse));
  }
  return cur;
}

TriadicFn tri_add(const TriadicFn& f, const TriadicFn& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  auto [a, b] = at_common_level(f, g);
  TriadicFn::Terms t = a.terms();
  for (const auto& [k, c] : b.terms()) t[k] += c;
  return TriadicFn(a.level(), std::move(t));
}

TriadicFn tri_scale(const TriadicFn& f, Complex s) {
  TriadicFn::Terms t = f.terms();
  for (auto& [k, c] : t) c *= s;
  return TriadicFn(f.level(), std::move(t));
}

TriadicFn tri_sub(const TriadicFn& f, const TriadicFn& g) { return tri_add(f, tri_scale(g, -1.0)); }

bool tri_approx_equal(const TriadicFn& f, const TriadicFn& g, double tol) {
  const TriadicFn d = tri_sub(f, g);
  for (const auto& [k, c] : d.terms())
    if (std::abs(c) > tol) return false;
  return true;
}

Complex nu_inner(const TriadicFn& f, const TriadicFn& g) {
  if (f.is_zero() || g.is_zero()) return {};
  auto [a, b] = at_common_level(f, g);
  Complex acc{};
  for (const auto& [k, c] : a.terms()) acc += c * std::conj(b.coeff(k));
  return acc * std::ldexp(1.0, -a.level());
}

double nu_norm(const TriadicFn& f) { return std::sqrt(std::real(nu_inner(f, f))); }

Eigen::MatrixXcd nu_gram(const std::vector<TriadicFn>& fs) {
  int level = TriadicFn::kNoLevel;
  for (const auto& f : fs) level = std::max(level, f.level());
  std::vector<TriadicFn> r;
  r.reserve(fs.size());
  for (const auto& f : fs) r.push_back(refine(f, level));
  const auto n = static_cast<Eigen::Index>(fs.size());
  Eigen::MatrixXcd G(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      G(i, j) = nu_inner(r[i], r[j]);
      G(j, i) = std::conj(G(i, j));
    }
  return G;
}

TriadicFn apply_D(const TriadicFn& f) {
  if (f.is_zero()) return f;
  return tri_scale(TriadicFn(f.level() - 1, f.terms()), kRootHalf);
}

TriadicFn apply_D_inverse(const TriadicFn& f) {
  if (f.is_zero()) return f;
  return tri_scale(TriadicFn(f.level() + 1, f.terms()), kRootTwo);
}

TriadicFn apply_D_power(const TriadicFn& f, int j) {
  TriadicFn out = f;
  for (; j > 0; --j) out = apply_D(out);
  for (; j < 0; ++j) out = apply_D_inverse(out);
  return out;
}

TriadicFn apply_lambda(std::int64_t j, const TriadicFn& f) {
  if (f.is_zero()) return f;
  const TriadicFn g = f.level() < 0 ? refine(f, 0) : f;
  const std::int64_t shift = pow3(g.level()) * j;
  TriadicFn::Terms t;
  for (const auto& [k, c] : g.terms()) t.emplace(k + shift, c);
  return TriadicFn(g.level(), std::move(t));
}

TriadicFn intertwiner_R(const LaurentPoly& f) {
  if (f.dim() != 1) throw DimensionMismatch("R acts on functions of one variable");
  TriadicFn::Terms t;
  for (const auto& [k, c] : f.coeffs()) t.emplace(k[0], c);
  return TriadicFn(0, std::move(t));
}

LaurentPoly cantor_filter() {
  return LaurentPoly(1, {{{0}, kRootHalf}, {{2}, kRootHalf}});
}

DilationSpec cantor_dilation() { return make_dilation(3); }

FilterBank cantor_bank() {
  return FilterBank({cantor_filter(), LaurentPoly::monomial({1}),
                     LaurentPoly(1, {{{0}, kRootHalf}, {{2}, -kRootHalf}})},
                    cantor_dilation(), 0);
}

bool is_cantor_context(const FilterOperator& op) {
  const auto& f = op.filter();
  return f.is_laurent() && f.spec == cantor_dilation() &&
         lp_approx_equal(f.laurent(), cantor_filter(), 1e-15);
}

TriadicFn R_infinity(const LimitVector& v) {
  if (!v.context || !is_cantor_context(*v.context))
    throw ContextMismatch("R_infinity needs the Cantor filter context");
  return apply_D_power(intertwiner_R(v.rep), -v.level);
}

WaveletPair cantor_wavelets() {
  return {TriadicFn::piece(1, 1, kRootTwo),
          TriadicFn(1, {{0, 1.0}, {2, -1.0}})};
}

RFamily r_family(double r) {
  if (!std::isfinite(r) || std::abs(r) > kRootHalf + 1e-12)
    throw ParameterOutOfRange("r must satisfy |r| <= 2^{-1/2}");
  double q = 1.0 - 2.0 * r * r;
  if (q < 1e-12) q = 0.0;
  const double s = std::sqrt(q);
  const double sh = std::sqrt(q / 2.0);
  LaurentPoly m1(1, {{{0}, -sh}, {{1}, kRootTwo * r}, {{2}, sh}});
  LaurentPoly m2(1, {{{0}, r}, {{1}, s}, {{2}, -r}});
  FilterBank bank({cantor_filter(), std::move(m1), std::move(m2)}, cantor_dilation(), 0);
  WaveletPair psi{TriadicFn(1, {{0, -s}, {1, 2.0 * r}, {2, s}}),
                  TriadicFn(1, {{0, kRootTwo * r}, {1, kRootTwo * s}, {2, -kRootTwo * r}})};
  return {std::move(bank), std::move(psi)};
}

TriadicFn wavelet_system(const TriadicFn& psi, int j, std::int64_t k) {
  return apply_D_power(apply_lambda(k, psi), -j);
}

std::vector<TriadicFn> wavelet_system_family(const WaveletPair& psi, int J, int K) {
  std::vector<TriadicFn> out;
  for (int j = -J; j <= J; ++j)
    for (int k = -K; k <= K; ++k) {
      out.push_back(wavelet_system(psi.psi1, j, k));
      out.push_back(wavelet_system(psi.psi2, j, k));
    }
  return out;
}

double intertwining_residual(int K, std::uint64_t seed) {
  const FilterOperator S(make_filter(cantor_filter(), cantor_dilation()));
  const OperatorPtr ctx = std::make_shared<const FilterOperator>(S);
  auto defect = [](const TriadicFn& a, const TriadicFn& b) {
    double r = 0.0;
    for (const auto& [k, c] : tri_sub(a, b).terms()) r = std::max(r, std::abs(c));
    return r;
  };
  double worst = 0.0;
  for (int n = -K; n <= K; ++n) {
    const LaurentPoly en = LaurentPoly::monomial({n});
    worst = std::max(worst, defect(intertwiner_R(apply_S(S, en)), apply_D(intertwiner_R(en))));
    for (int k = -K; k <= K; ++k)
      worst = std::max(worst, defect(intertwiner_R(lp_shift(en, {k})),
                                     apply_lambda(k, intertwiner_R(en))));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(-2, 3), offset(-20, 20), shift(-5, 5);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    TriadicFn f;
    const int n = level(rng);
    for (int i = 0; i < 4; ++i) f = tri_add(f, TriadicFn::piece(n, offset(rng), {unif(rng), unif(rng)}));
    const int j = shift(rng);
    worst = std::max(worst, defect(apply_D(apply_lambda(j, f)), apply_lambda(3 * j, apply_D(f))));

    const LimitVector v = make_limit_vector(ctx, t % 3, random_laurent(1, 6, rng));
    const TriadicFn base = R_infinity(v);
    for (int up = 1; up <= 3; ++up) worst = std::max(worst, defect(R_infinity(promote(v, v.level + up)), base));
  }
  return worst;
}

}  // namespace limitwave
