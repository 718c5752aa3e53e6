#pragma once

// Exact function arithmetic on the n-torus.
//
// Two carriers are provided. LaurentPoly is a finitely supported Fourier
// series (trigonometric polynomial) on T^n; all filter identities become
// coefficient identities. StepCircleFn is a piecewise-constant function on
// T^1 with exact rational breakpoints; almost-everywhere identities between
// step functions become arc-by-arc comparisons.
//
// Circle coordinates are in full turns: x in [0,1) stands for e^{2 pi i x}.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace limitwave {

using Complex = std::complex<double>;
using MultiIndex = std::vector<std::int64_t>;
using Rational = boost::multiprecision::cpp_rational;

class DilationSpec;

/// Coefficients with modulus at or below this are dropped during normalization.
inline constexpr double kZeroCoefficient = 1e-14;

class LaurentPoly {
 public:
  using CoeffMap = std::map<MultiIndex, Complex>;

  explicit LaurentPoly(int dim = 1);
  LaurentPoly(int dim, CoeffMap coeffs);

  static LaurentPoly constant(int dim, Complex c);
  static LaurentPoly monomial(MultiIndex k, Complex c = 1.0);
  /// 1-D convenience: sum_j coeffs[j] z^{first + j}.
  static LaurentPoly from_coefficients(std::span<const Complex> coeffs,
                                       std::int64_t first = 0);

  int dim() const { return dim_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  Complex coeff(const MultiIndex& k) const;
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  double max_abs_coeff() const;
  /// Largest |k_i| over the support; 0 for the zero polynomial.
  std::int64_t radius() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(Complex s);

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  void normalize();

  int dim_;
  CoeffMap coeffs_;
};

LaurentPoly lp_add(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly lp_sub(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly lp_scale(const LaurentPoly& f, Complex s);
LaurentPoly lp_mul(const LaurentPoly& f, const LaurentPoly& g);
/// z -> conj(f(z)): negates indices and conjugates coefficients.
LaurentPoly lp_conj(const LaurentPoly& f);
/// Multiplication by the character z^k.
LaurentPoly lp_shift(const LaurentPoly& f, const MultiIndex& k);

/// Inner product in L^2(T^n) with normalized Haar measure (Parseval).
Complex lp_inner(const LaurentPoly& f, const LaurentPoly& g);
double lp_norm(const LaurentPoly& f);

/// f o beta: the coefficient at k moves to A k.
LaurentPoly lp_compose_beta(const LaurentPoly& f, const DilationSpec& spec);

/// sum over a in ker(beta) of f(a z): coefficients on A Z^n are multiplied by N,
/// all others vanish.
LaurentPoly lp_coset_sum(const LaurentPoly& f, const DilationSpec& spec);

/// Inverse of lp_compose_beta on polynomials supported in A Z^n.
/// Throws InternalError when some index is off the lattice.
LaurentPoly lp_decimate(const LaurentPoly& f, const DilationSpec& spec);

Complex lp_eval(const LaurentPoly& f, std::span<const double> x);
inline Complex lp_eval(const LaurentPoly& f, double x) {
  return lp_eval(f, std::span<const double>(&x, 1));
}

/// True when every coefficient of f is within tol of the same coefficient of g.
bool lp_approx_equal(const LaurentPoly& f, const LaurentPoly& g, double tol);

// ---------------------------------------------------------------------------

/// Fractional part in [0,1).
Rational frac(const Rational& x);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);

class StepCircleFn {
 public:
  /// The zero function.
  StepCircleFn();
  /// breakpoints must start at 0 and increase strictly inside [0,1);
  /// values[i] holds on [b_i, b_{i+1}) with the last arc wrapping to 1.
  StepCircleFn(std::vector<Rational> breakpoints, std::vector<Complex> values);

  static StepCircleFn constant(Complex c);
  /// value on the arc [from, to) taken mod 1, zero elsewhere.
  /// Requires 0 <= to - from <= 1; to - from == 1 gives the constant.
  static StepCircleFn arc(const Rational& from, const Rational& to,
                          Complex value = 1.0);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t arc_count() const { return values_.size(); }
  Rational arc_length(std::size_t i) const;

  Complex value_at(const Rational& x) const;
  Complex value_at(double x) const;
  double max_abs() const;
  bool is_zero(double tol = kZeroCoefficient) const { return max_abs() <= tol; }

  friend bool operator==(const StepCircleFn&, const StepCircleFn&) = default;

 private:
  void normalize();

  std::vector<Rational> breakpoints_;
  std::vector<Complex> values_;
};

StepCircleFn sf_add(const StepCircleFn& f, const StepCircleFn& g);
StepCircleFn sf_sub(const StepCircleFn& f, const StepCircleFn& g);
StepCircleFn sf_scale(const StepCircleFn& f, Complex s);
StepCircleFn sf_mul(const StepCircleFn& f, const StepCircleFn& g);
StepCircleFn sf_conj(const StepCircleFn& f);
/// x -> |f(x)|^2
StepCircleFn sf_abs2(const StepCircleFn& f);
/// x -> f(N x mod 1)
StepCircleFn sf_compose_pow(const StepCircleFn& f, int N);
/// x -> sum_{j<N} f(x + j/N mod 1)
StepCircleFn sf_coset_sum(const StepCircleFn& f, int N);
/// w -> sum over zeta^N = w of f(zeta), i.e. x -> sum_{j<N} f((x + j)/N).
/// sf_coset_sum(f, N) == sf_compose_pow(sf_fibre_sum(f, N), N).
StepCircleFn sf_fibre_sum(const StepCircleFn& f, int N);
Complex sf_integral(const StepCircleFn& f);
Complex sf_inner(const StepCircleFn& f, const StepCircleFn& g);
/// Fourier coefficient: integral over [0,1) of f(x) e^{-2 pi i n x}.
Complex sf_fourier_coefficient(const StepCircleFn& f, std::int64_t n);
bool sf_approx_equal(const StepCircleFn& f, const StepCircleFn& g, double tol);

}  // namespace limitwave
