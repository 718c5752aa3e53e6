#include "limitwave/torus_fn.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "limitwave/dilation.hpp"
#include "limitwave/errors.hpp"

namespace limitwave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_dim(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.dim() != g.dim())
    throw DimensionMismatch("Laurent polynomials live on tori of different dimension");
}

void require_spec_dim(const LaurentPoly& f, const DilationSpec& spec) {
  if (f.dim() != spec.dim())
    throw DimensionMismatch("polynomial dimension does not match the dilation");
}

}  // namespace

LaurentPoly::LaurentPoly(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("torus dimension must be positive");
}

LaurentPoly::LaurentPoly(int dim, CoeffMap coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {
  if (dim < 1) throw std::invalid_argument("torus dimension must be positive");
  for (const auto& [k, c] : coeffs_)
    if (static_cast<int>(k.size()) != dim_)
      throw DimensionMismatch("multi-index length differs from torus dimension");
  normalize();
}

LaurentPoly LaurentPoly::constant(int dim, Complex c) {
  CoeffMap m;
  m[MultiIndex(dim, 0)] = c;
  return LaurentPoly(dim, std::move(m));
}

LaurentPoly LaurentPoly::monomial(MultiIndex k, Complex c) {
  const int dim = static_cast<int>(k.size());
  CoeffMap m;
  m[std::move(k)] = c;
  return LaurentPoly(dim, std::move(m));
}

LaurentPoly LaurentPoly::from_coefficients(std::span<const Complex> coeffs, std::int64_t first) {
  CoeffMap m;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    m[MultiIndex{first + static_cast<std::int64_t>(j)}] += coeffs[j];
  return LaurentPoly(1, std::move(m));
}

void LaurentPoly::normalize() {
  std::erase_if(coeffs_, [](const auto& kv) { return std::abs(kv.second) <= kZeroCoefficient; });
}

Complex LaurentPoly::coeff(const MultiIndex& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{} : it->second;
}

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::int64_t LaurentPoly::radius() const {
  std::int64_t r = 0;
  for (const auto& [k, c] : coeffs_)
    for (auto ki : k) r = std::max(r, ki < 0 ? -ki : ki);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  require_same_dim(*this, other);
  for (const auto& [k, c] : other.coeffs_) coeffs_[k] += c;
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  require_same_dim(*this, other);
  for (const auto& [k, c] : other.coeffs_) coeffs_[k] -= c;
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex s) {
  for (auto& [k, c] : coeffs_) c *= s;
  normalize();
  return *this;
}

LaurentPoly lp_add(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly out = f;
  out += g;
  return out;
}

LaurentPoly lp_sub(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly out = f;
  out -= g;
  return out;
}

LaurentPoly lp_scale(const LaurentPoly& f, Complex s) {
  LaurentPoly out = f;
  out *= s;
  return out;
}

LaurentPoly lp_mul(const LaurentPoly& f, const LaurentPoly& g) {
  require_same_dim(f, g);
  LaurentPoly::CoeffMap m;
  MultiIndex k(f.dim());
  for (const auto& [a, ca] : f.coeffs())
    for (const auto& [b, cb] : g.coeffs()) {
      for (int i = 0; i < f.dim(); ++i) k[i] = a[i] + b[i];
      m[k] += ca * cb;
    }
  return LaurentPoly(f.dim(), std::move(m));
}

LaurentPoly lp_conj(const LaurentPoly& f) {
  LaurentPoly::CoeffMap m;
  for (const auto& [k, c] : f.coeffs()) {
    MultiIndex neg(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
    m[std::move(neg)] = std::conj(c);
  }
  return LaurentPoly(f.dim(), std::move(m));
}

LaurentPoly lp_shift(const LaurentPoly& f, const MultiIndex& s) {
  if (static_cast<int>(s.size()) != f.dim())
    throw DimensionMismatch("shift index has the wrong dimension");
  LaurentPoly::CoeffMap m;
  for (const auto& [k, c] : f.coeffs()) {
    MultiIndex t(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) t[i] = k[i] + s[i];
    m[std::move(t)] = c;
  }
  return LaurentPoly(f.dim(), std::move(m));
}

Complex lp_inner(const LaurentPoly& f, const LaurentPoly& g) {
  require_same_dim(f, g);
  Complex acc{};
  // Walk the smaller map and look up in the larger one.
  const bool f_small = f.size() <= g.size();
  const auto& small = f_small ? f.coeffs() : g.coeffs();
  const auto& large = f_small ? g.coeffs() : f.coeffs();
  for (const auto& [k, c] : small) {
    auto it = large.find(k);
    if (it == large.end()) continue;
    acc += f_small ? c * std::conj(it->second) : it->second * std::conj(c);
  }
  return acc;
}

double lp_norm(const LaurentPoly& f) { return std::sqrt(std::real(lp_inner(f, f))); }

LaurentPoly lp_compose_beta(const LaurentPoly& f, const DilationSpec& spec) {
  require_spec_dim(f, spec);
  LaurentPoly::CoeffMap m;
  for (const auto& [k, c] : f.coeffs()) m[spec.apply(k)] += c;
  return LaurentPoly(f.dim(), std::move(m));
}

LaurentPoly lp_coset_sum(const LaurentPoly& f, const DilationSpec& spec) {
  require_spec_dim(f, spec);
  LaurentPoly::CoeffMap m;
  const double N = static_cast<double>(spec.N());
  for (const auto& [k, c] : f.coeffs())
    if (spec.in_image(k)) m[k] = N * c;
  return LaurentPoly(f.dim(), std::move(m));
}

LaurentPoly lp_decimate(const LaurentPoly& f, const DilationSpec& spec) {
  require_spec_dim(f, spec);
  LaurentPoly::CoeffMap m;
  for (const auto& [k, c] : f.coeffs()) m[spec.preimage(k)] += c;
  return LaurentPoly(f.dim(), std::move(m));
}

Complex lp_eval(const LaurentPoly& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dim())
    throw DimensionMismatch("evaluation point has the wrong dimension");
  Complex acc{};
  for (const auto& [k, c] : f.coeffs()) {
    double phase = 0.0;
    for (int i = 0; i < f.dim(); ++i) phase += static_cast<double>(k[i]) * x[i];
    // Reduce before scaling by 2 pi to keep the argument small.
    phase -= std::round(phase);
    acc += c * std::polar(1.0, kTwoPi * phase);
  }
  return acc;
}

bool lp_approx_equal(const LaurentPoly& f, const LaurentPoly& g, double tol) {
  return lp_sub(f, g).max_abs_coeff() <= tol;
}

// ---------------------------------------------------------------------------

Rational frac(const Rational& x) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(x);
  cpp_int den = boost::multiprecision::denominator(x);
  cpp_int q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return x - Rational(q);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  using boost::multiprecision::cpp_int;
  try {
    if (slash == std::string::npos) return Rational(cpp_int(text));
    cpp_int num(text.substr(0, slash));
    cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + text);
  }
}

std::string to_string(const Rational& x) {
  auto num = boost::multiprecision::numerator(x);
  auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

StepCircleFn::StepCircleFn() : breakpoints_{Rational(0)}, values_{Complex{}} {}

StepCircleFn::StepCircleFn(std::vector<Rational> breakpoints, std::vector<Complex> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size())
    throw std::invalid_argument("step function needs one value per breakpoint");
  if (breakpoints_.front() != 0) throw std::invalid_argument("first breakpoint must be 0");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i] < 0 || breakpoints_[i] >= 1)
      throw std::invalid_argument("breakpoints must lie in [0,1)");
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i]))
      throw std::invalid_argument("breakpoints must increase strictly");
  }
  normalize();
}

StepCircleFn StepCircleFn::constant(Complex c) { return StepCircleFn({Rational(0)}, {c}); }

StepCircleFn StepCircleFn::arc(const Rational& from, const Rational& to, Complex value) {
  const Rational len = to - from;
  if (len < 0 || len > 1) throw std::invalid_argument("arc length must lie in [0,1]");
  if (len == 0) return StepCircleFn();
  if (len == 1) return constant(value);
  const Rational a = frac(from);
  const Rational b = frac(to);
  if (a < b) {
    if (a == 0) return StepCircleFn({Rational(0), b}, {value, Complex{}});
    return StepCircleFn({Rational(0), a, b}, {Complex{}, value, Complex{}});
  }
  // Wrapping arc [a,1) u [0,b).
  if (b == 0) return StepCircleFn({Rational(0), a}, {Complex{}, value});
  return StepCircleFn({Rational(0), b, a}, {value, Complex{}, value});
}

void StepCircleFn::normalize() {
  for (auto& v : values_)
    if (std::abs(v) <= kZeroCoefficient) v = Complex{};
  std::vector<Rational> bp{breakpoints_.front()};
  std::vector<Complex> vals{values_.front()};
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (std::abs(values_[i] - vals.back()) <= kZeroCoefficient) continue;
    bp.push_back(breakpoints_[i]);
    vals.push_back(values_[i]);
  }
  breakpoints_ = std::move(bp);
  values_ = std::move(vals);
}

Rational StepCircleFn::arc_length(std::size_t i) const {
  const Rational end = (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1] : Rational(1);
  return end - breakpoints_[i];
}

Complex StepCircleFn::value_at(const Rational& x) const {
  const Rational y = frac(x);
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), y);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

Complex StepCircleFn::value_at(double x) const {
  double y = x - std::floor(x);
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), y,
                             [](double v, const Rational& b) { return v < b.convert_to<double>(); });
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepCircleFn::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

std::vector<Rational> merged_breakpoints(const StepCircleFn& f, const StepCircleFn& g) {
  std::vector<Rational> out;
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
             g.breakpoints().end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <typename Op>
StepCircleFn combine(const StepCircleFn& f, const StepCircleFn& g, Op op) {
  auto bp = merged_breakpoints(f, g);
  std::vector<Complex> vals;
  vals.reserve(bp.size());
  for (const auto& b : bp) vals.push_back(op(f.value_at(b), g.value_at(b)));
  return StepCircleFn(std::move(bp), std::move(vals));
}

template <typename Op>
StepCircleFn map_values(const StepCircleFn& f, Op op) {
  std::vector<Complex> vals;
  for (const auto& v : f.values()) vals.push_back(op(v));
  return StepCircleFn(f.breakpoints(), std::move(vals));
}

StepCircleFn from_points(std::vector<Rational> pts,
                         const std::function<Complex(const Rational&)>& value) {
  pts.push_back(Rational(0));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Complex> vals;
  vals.reserve(pts.size());
  for (const auto& p : pts) vals.push_back(value(p));
  return StepCircleFn(std::move(pts), std::move(vals));
}

void require_positive(int N) {
  if (N < 1) throw std::invalid_argument("dilation factor must be positive");
}

}  // namespace

StepCircleFn sf_add(const StepCircleFn& f, const StepCircleFn& g) {
  return combine(f, g, [](Complex a, Complex b) { return a + b; });
}

StepCircleFn sf_sub(const StepCircleFn& f, const StepCircleFn& g) {
  return combine(f, g, [](Complex a, Complex b) { return a - b; });
}

StepCircleFn sf_mul(const StepCircleFn& f, const StepCircleFn& g) {
  return combine(f, g, [](Complex a, Complex b) { return a * b; });
}

StepCircleFn sf_scale(const StepCircleFn& f, Complex s) {
  return map_values(f, [s](Complex v) { return s * v; });
}

StepCircleFn sf_conj(const StepCircleFn& f) {
  return map_values(f, [](Complex v) { return std::conj(v); });
}

StepCircleFn sf_abs2(const StepCircleFn& f) {
  return map_values(f, [](Complex v) { return Complex(std::norm(v), 0.0); });
}

StepCircleFn sf_compose_pow(const StepCircleFn& f, int N) {
  require_positive(N);
  std::vector<Rational> bp;
  std::vector<Complex> vals;
  for (int j = 0; j < N; ++j)
    for (std::size_t i = 0; i < f.arc_count(); ++i) {
      bp.push_back((f.breakpoints()[i] + j) / N);
      vals.push_back(f.values()[i]);
    }
  return StepCircleFn(std::move(bp), std::move(vals));
}

StepCircleFn sf_coset_sum(const StepCircleFn& f, int N) {
  require_positive(N);
  std::vector<Rational> pts;
  for (const auto& b : f.breakpoints())
    for (int j = 0; j < N; ++j) pts.push_back(frac(b - Rational(j, N)));
  return from_points(std::move(pts), [&](const Rational& p) {
    Complex acc{};
    for (int j = 0; j < N; ++j) acc += f.value_at(p + Rational(j, N));
    return acc;
  });
}

StepCircleFn sf_fibre_sum(const StepCircleFn& f, int N) {
  require_positive(N);
  std::vector<Rational> pts;
  for (const auto& b : f.breakpoints()) pts.push_back(frac(b * N));
  return from_points(std::move(pts), [&](const Rational& p) {
    Complex acc{};
    for (int j = 0; j < N; ++j) acc += f.value_at((p + j) / N);
    return acc;
  });
}

Complex sf_integral(const StepCircleFn& f) {
  Complex acc{};
  for (std::size_t i = 0; i < f.arc_count(); ++i)
    acc += f.values()[i] * f.arc_length(i).convert_to<double>();
  return acc;
}

Complex sf_inner(const StepCircleFn& f, const StepCircleFn& g) {
  return sf_integral(sf_mul(f, sf_conj(g)));
}

Complex sf_fourier_coefficient(const StepCircleFn& f, std::int64_t n) {
  if (n == 0) return sf_integral(f);
  // integral_a^b e^{-2 pi i n x} dx = (e^{-2 pi i n a} - e^{-2 pi i n b}) / (2 pi i n);
  // the phases n*a are reduced exactly before conversion to double.
  auto phase = [n](const Rational& x) {
    return std::polar(1.0, -kTwoPi * frac(x * n).convert_to<double>());
  };
  const Complex denom(0.0, kTwoPi * static_cast<double>(n));
  Complex acc{};
  for (std::size_t i = 0; i < f.arc_count(); ++i) {
    const Rational a = f.breakpoints()[i];
    const Rational b = a + f.arc_length(i);
    acc += f.values()[i] * (phase(a) - phase(b)) / denom;
  }
  return acc;
}

bool sf_approx_equal(const StepCircleFn& f, const StepCircleFn& g, double tol) {
  return sf_sub(f, g).max_abs() <= tol;
}

}  // namespace limitwave
