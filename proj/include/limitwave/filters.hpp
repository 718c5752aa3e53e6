#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "limitwave/dilation.hpp"
#include "limitwave/torus_fn.hpp"

namespace limitwave {

/// Residuals below this (max coefficient or arc value) count as the zero function.
inline constexpr double kZeroTolerance = 1e-12;

/// A subset B of the circle given as a finite union of rational arcs.
class ArcSet {
 public:
  /// The full circle.
  ArcSet();
  /// Union of arcs [from, to) mod 1.
  explicit ArcSet(const std::vector<std::pair<Rational, Rational>>& arcs);

  static ArcSet full() { return ArcSet(); }
  static ArcSet empty();

  const StepCircleFn& indicator() const { return indicator_; }
  Rational measure() const;
  bool is_full() const;

 private:
  explicit ArcSet(StepCircleFn indicator) : indicator_(std::move(indicator)) {}
  StepCircleFn indicator_;
};

using FilterFunction = std::variant<LaurentPoly, StepCircleFn>;

/// A filter m for beta, optionally relative to a multiplicity set B
/// (the generalized filter equation with chi_B on the right-hand side).
struct Filter {
  FilterFunction m;
  DilationSpec spec;
  std::optional<ArcSet> multiplicity;

  bool is_laurent() const { return std::holds_alternative<LaurentPoly>(m); }
  const LaurentPoly& laurent() const;
  const StepCircleFn& step() const;
};

Filter make_filter(LaurentPoly m, DilationSpec spec);
/// Step filters require a 1-D integer dilation.
Filter make_filter(StepCircleFn m, DilationSpec spec, std::optional<ArcSet> B = std::nullopt);

/// N filters sharing one dilation; the matrix (N^{-1/2} m_a(d z)) should be
/// unitary for almost every z.
struct FilterBank {
  std::vector<LaurentPoly> filters;
  DilationSpec spec;
  std::size_t low_pass = 0;

  /// low_pass defaults to the member maximizing |m_a(1)| (first on ties).
  FilterBank(std::vector<LaurentPoly> filters, DilationSpec spec,
             std::optional<std::size_t> low_pass = std::nullopt);

  std::size_t size() const { return filters.size(); }
  Filter member(std::size_t a) const { return make_filter(filters.at(a), spec); }
};

/// coset_sum(m conj(m)) - N
LaurentPoly verify_filter(const LaurentPoly& m, const DilationSpec& spec);
/// sf_coset_sum(|m|^2, N) - N
StepCircleFn verify_filter(const StepCircleFn& m, int N);

/// Compares sf_coset_sum(|m|^2, N) with N * (chi_B o beta); by
/// sf_coset_sum = (fibre sum) o beta this is the generalized filter equation
/// pulled back through beta.
StepCircleFn verify_generalized_filter(const StepCircleFn& m, const ArcSet& B, int N);

/// Max-abs residual of whichever filter equation applies to f.
double filter_residual(const Filter& f);

using BankResidual = std::vector<std::vector<LaurentPoly>>;

/// Entry (a,b) is coset_sum(m_a conj(m_b)) - delta_{ab} N.
BankResidual verify_filter_bank(const FilterBank& bank);
double max_residual(const BankResidual& r);

/// m = sum_j c_j z^{q_j} over the dual transversal.
Filter filter_from_unit_vector(std::span<const Complex> c, const DilationSpec& spec);

/// m_a = sum_j c_{a,j} z^{q_j}; basis rows must be orthonormal.
FilterBank bank_from_orthonormal_basis(const std::vector<std::vector<Complex>>& basis,
                                       const DilationSpec& spec);

/// Reads back the coefficient vector of m on the dual transversal.
std::vector<Complex> coefficients_on_dual(const LaurentPoly& m, const DilationSpec& spec);

enum class Purity { PureByComplement, PureByNonUnimodular, Inconclusive };

const char* to_string(Purity p);

/// Sufficient purity criteria: (a) B misses a set of positive measure;
/// (b) |m| != 1 on a set of positive measure. Never reports non-purity.
Purity purity_check(const Filter& f);
Purity purity_check(const LaurentPoly& m, const std::optional<ArcSet>& B = std::nullopt);
Purity purity_check(const StepCircleFn& m, const std::optional<ArcSet>& B = std::nullopt);

struct LowPass {
  bool low_pass;
  double deviation;  // |m(1) - N^{1/2}|
};

LowPass is_low_pass(const LaurentPoly& m, const DilationSpec& spec);

/// Largest deviation from unitarity of (N^{-1/2} m_a(a_d z))_{a,d} over
/// uniformly random z.
double bank_unitarity_defect(const FilterBank& bank, int samples = 64,
                             std::uint64_t seed = 42);

/// Parseval-frame defect |sum_{|n|<=M} |<f, e_n chi_B>|^2 - ||f||^2| for a
/// step function f supported in B, viewed on one period of the line.
double parseval_frame_defect(const StepCircleFn& f, const ArcSet& B, std::int64_t M);

/// Splits [from, to) into equal arcs carrying values uniform on the unit disk.
StepCircleFn random_step_function(const Rational& from, const Rational& to, int pieces,
                                  std::mt19937_64& rng);

}  // namespace limitwave
