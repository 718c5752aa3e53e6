#include "limitwave/solenoid.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "limitwave/errors.hpp"
#include "limitwave/fractal.hpp"

namespace limitwave {
namespace {

void guard(const LaurentPoly& f) {
  if (f.size() > kMaxSupport) throw SupportOverflow("cylinder function exceeds 10^6 coefficients");
}

void check_level(int n) {
  if (n < 0 || n > kMaxLevel) throw ParameterOutOfRange("cylinder level outside [0, 64]");
}

double max_abs(const Eigen::MatrixXcd& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

}  // namespace

SolenoidCtx::SolenoidCtx(const Filter& m) : op_(make_context(m)) {
  if (!op_->filter().is_laurent()) throw RepresentationMismatch("solenoid contexts need a Laurent filter");
}

SolenoidCtx::SolenoidCtx(OperatorPtr op) : op_(std::move(op)) {
  if (!op_) throw ContextMismatch("missing operator");
  if (!op_->filter().is_laurent()) throw RepresentationMismatch("solenoid contexts need a Laurent filter");
}

LaurentPoly SolenoidCtx::cocycle(int n) const {
  check_level(n);
  LaurentPoly acc = LaurentPoly::constant(spec().dim(), 1.0);
  LaurentPoly mj = m();
  for (int j = 0; j < n; ++j) {
    acc = lp_mul(acc, mj);
    guard(acc);
    if (j + 1 < n) mj = lp_compose_beta(mj, spec());
  }
  return acc;
}

LaurentPoly SolenoidCtx::weight(int n) const {
  const LaurentPoly c = cocycle(n);
  return lp_mul(c, lp_conj(c));
}

CylinderFn raise(const SolenoidCtx& ctx, const CylinderFn& c, int level) {
  if (level < c.level) throw LevelTooLow("cannot lower a cylinder level");
  check_level(level);
  CylinderFn out = c;
  for (; out.level < level; ++out.level) {
    out.g = lp_compose_beta(out.g, ctx.spec());
    guard(out.g);
  }
  return out;
}

Complex tau_integral(const SolenoidCtx& ctx, const CylinderFn& c) {
  check_level(c.level);
  if (c.g.dim() != ctx.spec().dim()) throw DimensionMismatch("cylinder dimension");
  const LaurentPoly w = ctx.weight(c.level);
  // Constant coefficient of g w.
  Complex acc{};
  MultiIndex neg(c.g.dim());
  for (const auto& [k, gk] : c.g.coeffs()) {
    for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
    acc += gk * w.coeff(neg);
  }
  return acc;
}

Complex tau_inner(const SolenoidCtx& ctx, const CylinderFn& c, const CylinderFn& d) {
  const int l = std::max(c.level, d.level);
  const CylinderFn a = raise(ctx, c, l), b = raise(ctx, d, l);
  return tau_integral(ctx, {l, lp_mul(a.g, lp_conj(b.g))});
}

double check_consistency(const SolenoidCtx& ctx, const LaurentPoly& g, int n) {
  const Complex lhs = tau_integral(ctx, {n + 1, lp_compose_beta(g, ctx.spec())});
  return std::abs(lhs - tau_integral(ctx, {n, g}));
}

Complex dutkay_fibre_integral(const SolenoidCtx& ctx, const LaurentPoly& g, int n) {
  if (ctx.spec().dim() != 1) throw DimensionMismatch("the fibre formula is one-dimensional");
  check_level(n);
  const std::int64_t N = ctx.spec().N();
  std::int64_t Nn = 1;
  for (int i = 0; i < n; ++i) {
    if (Nn > 1'000'000 / N) throw SupportOverflow("N^n roots exceed 10^6");
    Nn *= N;
  }
  // As a function of z the fibre average is a trigonometric polynomial of
  // degree below (deg g + 2 deg(m) N^n) / N^n + 1, so M equally spaced nodes
  // integrate it exactly once M exceeds that degree.
  const std::int64_t deg = g.radius() + 2 * ctx.m().radius() * Nn;
  const std::int64_t M = deg / Nn + 2;
  Complex total{};
  for (std::int64_t t = 0; t < M; ++t) {
    Complex fibre{};
    for (std::int64_t s = 0; s < Nn; ++s) {
      // w = e^{2 pi i x}, x = (t/M + s)/N^n
      const double x = (static_cast<double>(t) / static_cast<double>(M) + static_cast<double>(s)) /
                       static_cast<double>(Nn);
      Complex val = lp_eval(g, x);
      double xj = x;
      for (int j = 0; j < n; ++j) {
        val *= std::norm(lp_eval(ctx.m(), xj));
        xj = std::fmod(xj * static_cast<double>(N), 1.0);
      }
      fibre += val;
    }
    total += fibre / static_cast<double>(Nn);
  }
  return total / static_cast<double>(M);
}

double check_dutkay_formula(const SolenoidCtx& ctx, const LaurentPoly& g, int n) {
  return std::abs(tau_integral(ctx, {n, g}) - dutkay_fibre_integral(ctx, g, n));
}

LimitVector V_infinity(const SolenoidCtx& ctx, const CylinderFn& c) {
  return make_limit_vector(ctx.op(), c.level, lp_mul(c.g, ctx.cocycle(c.level)));
}

CylinderFn dilation_on_cylinders(const SolenoidCtx& ctx, const CylinderFn& c) {
  LaurentPoly mn = ctx.m();
  for (int j = 0; j < c.level; ++j) mn = lp_compose_beta(mn, ctx.spec());
  return {c.level, lp_mul(mn, lp_compose_beta(c.g, ctx.spec()))};
}

CylinderFn translation_on_cylinders(const SolenoidCtx& ctx, const MultiIndex& gamma,
                                    const CylinderFn& c) {
  if (static_cast<int>(gamma.size()) != ctx.spec().dim()) throw DimensionMismatch("gamma dimension");
  return {c.level, lp_shift(c.g, ctx.spec().apply_power(gamma, c.level))};
}

DutkayReport dutkay_transform_check(int J, int K, std::uint64_t seed) {
  const SolenoidCtx ctx(make_filter(cantor_filter(), cantor_dilation()));
  auto transform = [&](const CylinderFn& c) { return R_infinity(V_infinity(ctx, c)); };
  auto residual = [](const TriadicFn& a, const TriadicFn& b) {
    double r = 0.0;
    for (const auto& [k, c] : tri_sub(a, b).terms()) r = std::max(r, std::abs(c));
    return r;
  };

  DutkayReport rep;
  rep.chi_c = residual(transform({0, LaurentPoly::constant(1, 1.0)}), TriadicFn::piece(0, 0));

  std::vector<CylinderFn> cyl;
  for (int n = 0; n <= J; ++n)
    for (int k = -K; k <= K; ++k) cyl.push_back({n, LaurentPoly::monomial({k})});
  std::vector<TriadicFn> images;
  for (const auto& c : cyl) images.push_back(transform(c));
  const auto size = static_cast<Eigen::Index>(cyl.size());
  Eigen::MatrixXcd tau(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) tau(i, j) = tau_inner(ctx, cyl[i], cyl[j]);
  rep.gram = max_abs(tau - nu_gram(images));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(0, 3), shift(-3, 3);
  for (int t = 0; t < 20; ++t) {
    const CylinderFn c{level(rng), random_laurent(1, 4, rng)};
    const TriadicFn fc = transform(c);
    rep.covariance = std::max(rep.covariance,
                              residual(transform(dilation_on_cylinders(ctx, c)), apply_D(fc)));
    const std::int64_t gamma = shift(rng);
    rep.covariance = std::max(
        rep.covariance,
        residual(transform(translation_on_cylinders(ctx, {gamma}, c)), apply_lambda(gamma, fc)));
  }
  return rep;
}

Complex winding_eval(const CylinderFn& c, double x, std::int64_t N) {
  if (c.g.dim() != 1) throw DimensionMismatch("winding line lives in the one-dimensional solenoid");
  double y = x;
  for (int i = 0; i < c.level; ++i) y /= static_cast<double>(N);
  return lp_eval(c.g, y);
}

const char* to_string(Quadrature q) {
  return q == Quadrature::Simpson ? "simpson" : "simpson-extrapolated";
}

WindingReport winding_check(const SolenoidCtx& ctx, const CylinderFn& c, const SampledFn& phi,
                            Quadrature q, double cohen_radius) {
  if (ctx.spec().dim() != 1 || phi.grid.dim() != 1)
    throw DimensionMismatch("winding check is one-dimensional");
  const Grid& grid = phi.grid;
  if (grid.box() < 1.0) throw BoxTooSmall("box shorter than one period");
  const std::int64_t N = ctx.spec().N();

  std::vector<Complex> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    f[i] = winding_eval(c, grid.point(i)[0], N) * std::norm(phi.values[i]);

  WindingReport rep;
  const Complex full = simpson(f, grid.step());
  if (q == Quadrature::Simpson) {
    rep.numeric = full;
  } else {
    const std::size_t cells = grid.per_axis() - 1;
    if (cells % 4 != 0) throw BoxTooSmall("grid cannot be halved for extrapolation");
    const std::size_t lo = cells / 4;
    const Complex half = simpson(std::span<const Complex>(f).subspan(lo, cells / 2 + 1), grid.step());
    rep.numeric = 2.0 * full - half;
  }
  rep.exact = tau_integral(ctx, c);
  rep.deviation = std::abs(rep.numeric - rep.exact);
  rep.low_pass = is_low_pass(ctx.m(), ctx.spec()).low_pass;
  rep.cohen_min = cohen_probe(ctx.m(), cohen_radius);
  return rep;
}

}  // namespace limitwave
