#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "limitwave/operators.hpp"

namespace limitwave {

using OperatorPtr = std::shared_ptr<const FilterOperator>;

/// Highest level a vector may be promoted to.
inline constexpr int kMaxLevel = 64;
/// Largest coefficient count a representative may reach.
inline constexpr std::size_t kMaxSupport = 1'000'000;

/// The class of (level, rep) in the direct limit of (H, S_m); (n, f) and
/// (n+1, S_m f) name the same vector. Only Laurent representatives are carried.
struct LimitVector {
  int level = 0;
  LaurentPoly rep;
  OperatorPtr context;
};

OperatorPtr make_context(const Filter& m);

LimitVector make_limit_vector(OperatorPtr ctx, int level, LaurentPoly rep);

/// Applies S_m (target - level) times. LevelTooLow when target < level.
LimitVector promote(const LimitVector& v, int target_level);

/// Both promoted to the larger level. ContextMismatch for different filters.
Complex limit_inner(const LimitVector& v, const LimitVector& w);
double limit_norm(const LimitVector& v);

/// Equality as limit vectors, coefficientwise within tol at a common level.
bool limit_equal(const LimitVector& v, const LimitVector& w, double tol = 0.0);

/// (n, f) -> (n-1, f) for n >= 1, (0, f) -> (0, S_m f).
LimitVector apply_S_infinity(const LimitVector& v);
/// (n, f) -> (n+1, f).
LimitVector apply_S_infinity_inverse(const LimitVector& v);
/// S_infinity^j for any integer j.
LimitVector apply_S_infinity_power(const LimitVector& v, int j);

/// (n, f) -> (n, e_{A^n gamma} f).
LimitVector apply_mu_infinity(const MultiIndex& gamma, const LimitVector& v);

/// {(1, m_b) : b != low_pass}. The context is the low-pass member.
std::vector<LimitVector> wavelet_generators(const FilterBank& bank);
std::vector<LimitVector> wavelet_generators(const FilterBank& bank, OperatorPtr ctx);

/// S_inf^{-j} mu_inf(k) psi for |j| <= J, |k|_inf <= K, psi in gens, ordered
/// by j, then k (first coordinate fastest), then psi.
std::vector<LimitVector> wavelet_family(const std::vector<LimitVector>& gens, int J, int K);

Eigen::MatrixXcd gram_matrix(const std::vector<LimitVector>& vectors);

struct GramDeviation {
  double diagonal = 0.0;      // max |G_ii - 1|
  double off_diagonal = 0.0;  // max |G_ij|, i != j
  double max() const { return std::max(diagonal, off_diagonal); }
};

GramDeviation gram_deviation(const Eigen::MatrixXcd& G);

}  // namespace limitwave
