#pragma once

// Cylinder functions g o pi_n on the solenoid lim(T^n, beta) and the
// filter-weighted probability measure tau, accessed only through integrals.

#include <cstdint>
#include <vector>

#include "limitwave/cascade.hpp"
#include "limitwave/direct_limit.hpp"

namespace limitwave {

/// g o pi_n; (n, g) and (n+1, g o beta) are the same function.
struct CylinderFn {
  int level = 0;
  LaurentPoly g;
};

class SolenoidCtx {
 public:
  /// The filter is validated; Laurent filters only.
  explicit SolenoidCtx(const Filter& m);
  explicit SolenoidCtx(OperatorPtr op);

  const OperatorPtr& op() const { return op_; }
  const LaurentPoly& m() const { return op_->filter().laurent(); }
  const DilationSpec& spec() const { return op_->spec(); }

  /// prod_{j<n} |m o beta^j|^2 as a Laurent polynomial.
  LaurentPoly weight(int n) const;
  /// prod_{j<n} m o beta^j.
  LaurentPoly cocycle(int n) const;

 private:
  OperatorPtr op_;
};

/// (n, g) -> (level, g o beta^{level-n}). LevelTooLow when level < n.
CylinderFn raise(const SolenoidCtx& ctx, const CylinderFn& c, int level);

/// Constant coefficient of g prod_{j<n} |m o beta^j|^2.
Complex tau_integral(const SolenoidCtx& ctx, const CylinderFn& c);
/// tau-integral of g conj(g') at the common level.
Complex tau_inner(const SolenoidCtx& ctx, const CylinderFn& c, const CylinderFn& d);

/// |tau(n+1, g o beta) - tau(n, g)|
double check_consistency(const SolenoidCtx& ctx, const LaurentPoly& g, int n);

/// Fibre-averaged integral int N^{-n} sum_{w^{N^n} = z} g(w) prod_{j<n}
/// |m(w^{N^j})|^2 dz, evaluated by summing over roots at equally spaced z
/// (exact for trigonometric polynomials). 1-D only.
Complex dutkay_fibre_integral(const SolenoidCtx& ctx, const LaurentPoly& g, int n);
/// |tau_integral - dutkay_fibre_integral|
double check_dutkay_formula(const SolenoidCtx& ctx, const LaurentPoly& g, int n);

/// (n, g) -> U_n(g prod_{j<n} m o beta^j).
LimitVector V_infinity(const SolenoidCtx& ctx, const CylinderFn& c);

/// (n, g) -> (n, (m o beta^n)(g o beta)).
CylinderFn dilation_on_cylinders(const SolenoidCtx& ctx, const CylinderFn& c);
/// (n, g) -> (n, e_{A^n gamma} g).
CylinderFn translation_on_cylinders(const SolenoidCtx& ctx, const MultiIndex& gamma,
                                    const CylinderFn& c);

struct DutkayReport {
  double chi_c = 0.0;       // R_inf V_inf(0,1) against chi_C
  double gram = 0.0;        // tau Gram against nu Gram of the transforms
  double covariance = 0.0;  // transported dilation and translation
  double max() const { return std::max({chi_c, gram, covariance}); }
};

/// Cantor context; cylinders (n, z^k) with n <= J, |k| <= K and 20 seeded
/// random cylinders for the covariance part.
DutkayReport dutkay_transform_check(int J, int K, std::uint64_t seed = 42);

/// g(e^{2 pi i N^{-n} x}).
Complex winding_eval(const CylinderFn& c, double x, std::int64_t N);

enum class Quadrature { Simpson, SimpsonTailExtrapolated };

const char* to_string(Quadrature q);

struct WindingReport {
  Complex numeric;
  Complex exact;
  double deviation = 0.0;
  bool low_pass = false;
  double cohen_min = 0.0;
  /// Low-pass and Cohen probe positive; otherwise the comparison is not meaningful.
  bool applicable() const { return low_pass && cohen_min > 1e-12; }
};

/// Quadrature of winding_eval(c, .) |phi|^2 over the box of phi compared with
/// tau_integral(c). The extrapolated rule combines the box [-T,T] with
/// [-T/2,T/2] as 2 I(T) - I(T/2). BoxTooSmall for boxes shorter than 1 or
/// grids that cannot be halved.
WindingReport winding_check(const SolenoidCtx& ctx, const CylinderFn& c, const SampledFn& phi,
                            Quadrature q = Quadrature::Simpson, double cohen_radius = 0.25);

}  // namespace limitwave
