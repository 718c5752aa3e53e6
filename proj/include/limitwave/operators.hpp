#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "limitwave/filters.hpp"

namespace limitwave {

/// Tag for building an operator from a filter that may fail the filter equation.
struct SkipValidation {};

/// The isometry S_m f = m (f o beta) and its adjoint.
class FilterOperator {
 public:
  /// Throws InvalidFilter when the filter equation residual exceeds 1e-10.
  explicit FilterOperator(Filter f);
  FilterOperator(Filter f, SkipValidation);

  const Filter& filter() const { return filter_; }
  const DilationSpec& spec() const { return filter_.spec; }

  /// Same filter function and dilation.
  bool same_as(const FilterOperator& other) const;

 private:
  Filter filter_;
};

LaurentPoly apply_S(const FilterOperator& op, const LaurentPoly& f);
StepCircleFn apply_S(const FilterOperator& op, const StepCircleFn& f);

/// N^{-1} decimate(coset_sum(conj(m) f)).
LaurentPoly apply_S_adjoint(const FilterOperator& op, const LaurentPoly& f);
/// N^{-1} fibre_sum(conj(m) f), the same average written on the base circle.
StepCircleFn apply_S_adjoint(const FilterOperator& op, const StepCircleFn& f);

/// max over |k|_inf <= K of the max-abs coefficient of
/// sum_a S_a S_a^* e_k - e_k.
double verify_cuntz(std::span<const FilterOperator> ops, int K);
double verify_cuntz(const FilterBank& bank, int K);

/// Worst |<Sf,Sg> - <f,g>|; the first trial is f = g = 1, the rest are seeded
/// random pairs.
double verify_isometry(const FilterOperator& op, int trials, std::uint64_t seed = 42);

/// Worst |<Sf,g> - <f,S^*g>| over seeded random pairs.
double verify_adjointness(const FilterOperator& op, int trials, std::uint64_t seed = 42);

/// Coefficients uniform on the unit disk at every index with |k|_inf <= radius.
LaurentPoly random_laurent(int dim, int radius, std::mt19937_64& rng);

}  // namespace limitwave
