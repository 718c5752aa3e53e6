#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "limitwave/torus_fn.hpp"

namespace limitwave {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// The endomorphism pair alpha(k) = A k on Z^n and beta = alpha^* on T^n,
/// beta(e^{2 pi i x}) = e^{2 pi i A^t x}, for an expansive integer matrix A.
///
/// ker(beta) = (A^t)^{-1} Z^n / Z^n is parametrized by representatives d of
/// Z^n / A^t Z^n; its dual is parametrized by monomials z^q with q running
/// over Z^n / A Z^n.
class DilationSpec {
 public:
  /// Validates and precomputes everything; see make_dilation.
  explicit DilationSpec(IntMatrix A);

  int dim() const { return dim_; }
  const IntMatrix& matrix() const { return A_; }
  std::int64_t N() const { return N_; }
  std::int64_t det() const { return det_; }
  const std::vector<MultiIndex>& ker_transversal() const { return ker_; }
  const std::vector<MultiIndex>& dual_transversal() const { return dual_; }

  /// alpha(k) = A k. Throws SupportOverflow on int64 overflow.
  MultiIndex apply(const MultiIndex& k) const;
  /// alpha^j(k) for j >= 0.
  MultiIndex apply_power(const MultiIndex& k, int j) const;
  /// k in A Z^n.
  bool in_image(const MultiIndex& k) const;
  /// A^{-1} k; throws InternalError when k is not in A Z^n.
  MultiIndex preimage(const MultiIndex& k) const;
  /// k in A^t Z^n.
  bool in_transpose_image(const MultiIndex& k) const;

  /// A^t x and (A^t)^{-1} x on real vectors.
  std::vector<double> transpose_apply(std::span<const double> x) const;
  std::vector<double> transpose_inverse_apply(std::span<const double> x) const;

  /// Number of times k can be divided by A inside Z^n, capped at max_depth.
  /// Finite for every k != 0 because A is expansive.
  int division_depth(const MultiIndex& k, int max_depth) const;

  friend bool operator==(const DilationSpec& a, const DilationSpec& b) {
    return a.A_ == b.A_;
  }

 private:
  int dim_;
  IntMatrix A_;
  std::int64_t det_;
  std::int64_t N_;
  IntMatrix adj_;   // adjugate of A
  IntMatrix adjT_;  // adjugate of A^t
  Eigen::MatrixXd At_;
  Eigen::MatrixXd At_inv_;
  std::vector<MultiIndex> ker_;
  std::vector<MultiIndex> dual_;
};

/// Checks squareness, det != 0 (SingularMatrix), expansiveness |lambda| >= 1 + 1e-9
/// (NotExpansive), builds both transversals and verifies P P^* = N I
/// (DualityFailure).
DilationSpec make_dilation(IntMatrix A);

/// Scalar dilation by N on Z.
DilationSpec make_dilation(std::int64_t N);

/// Points x_d = (A^t)^{-1} d reduced to [0,1)^n; these are ker(beta) in circle
/// coordinates, in the order of ker_transversal().
std::vector<std::vector<double>> kernel_points(const DilationSpec& spec);

/// Monomials z^q for q in dual_transversal().
std::vector<LaurentPoly> kernel_dual_characters(const DilationSpec& spec);

/// P_{d,q} = e^{2 pi i q . (A^t)^{-1} d}.
Eigen::MatrixXcd pairing_matrix(const DilationSpec& spec);

/// Integer determinant (fraction-free elimination).
std::int64_t integer_determinant(const IntMatrix& A);

}  // namespace limitwave
