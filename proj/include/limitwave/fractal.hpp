#pragma once

// L^2 of the filled-out Cantor set R = union of 3^{-n}(C + k) with its
// dilation-invariant measure nu, modelled exactly on finite combinations of
// the indicators chi_{3^{-n}(C+k)}.

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "limitwave/direct_limit.hpp"

namespace limitwave {

/// Finite sum of c_k chi_{3^{-n}(C+k)} over offsets k at one level n.
/// The zero function carries no level and adopts whatever level it meets.
class TriadicFn {
 public:
  using Terms = std::map<std::int64_t, Complex>;
  static constexpr int kNoLevel = std::numeric_limits<int>::min();

  TriadicFn() = default;
  TriadicFn(int level, Terms terms);

  /// c chi_{3^{-n}(C+k)}
  static TriadicFn piece(int n, std::int64_t k, Complex c = 1.0);

  int level() const { return level_; }
  const Terms& terms() const { return terms_; }
  Complex coeff(std::int64_t k) const;
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const TriadicFn&, const TriadicFn&) = default;

 private:
  int level_ = kNoLevel;
  Terms terms_;
};

/// Re-expresses f at level l via chi_{(n,k)} = chi_{(n+1,3k)} + chi_{(n+1,3k+2)}.
/// LevelTooLow when l is below f's level.
TriadicFn refine(const TriadicFn& f, int level);
/// Merges sibling pairs with equal coefficients as long as possible.
TriadicFn reduce(const TriadicFn& f);

TriadicFn tri_add(const TriadicFn& f, const TriadicFn& g);
TriadicFn tri_sub(const TriadicFn& f, const TriadicFn& g);
TriadicFn tri_scale(const TriadicFn& f, Complex s);
bool tri_approx_equal(const TriadicFn& f, const TriadicFn& g, double tol);

/// sum_k f_k conj(g_k) 2^{-l} at the common level l.
Complex nu_inner(const TriadicFn& f, const TriadicFn& g);
double nu_norm(const TriadicFn& f);
Eigen::MatrixXcd nu_gram(const std::vector<TriadicFn>& fs);

/// (D f)(x) = 2^{-1/2} f(x/3): (n,k) -> (n-1,k), coefficient times 2^{-1/2}.
TriadicFn apply_D(const TriadicFn& f);
TriadicFn apply_D_inverse(const TriadicFn& f);
TriadicFn apply_D_power(const TriadicFn& f, int j);
/// (lambda_j f)(x) = f(x - j); negative levels are refined to 0 first.
TriadicFn apply_lambda(std::int64_t j, const TriadicFn& f);

/// R e_n = chi_{C+n}.
TriadicFn intertwiner_R(const LaurentPoly& f);

LaurentPoly cantor_filter();
DilationSpec cantor_dilation();
/// {2^{-1/2}(1+z^2), z, 2^{-1/2}(1-z^2)}, low-pass first.
FilterBank cantor_bank();
bool is_cantor_context(const FilterOperator& op);

/// (n, f) -> D^{-n} R f. ContextMismatch unless v lives over the Cantor filter.
TriadicFn R_infinity(const LimitVector& v);

struct WaveletPair {
  TriadicFn psi1;
  TriadicFn psi2;
};

/// psi1 = 2^{1/2} chi_{(1,1)}, psi2 = chi_{(1,0)} - chi_{(1,2)}.
WaveletPair cantor_wavelets();

struct RFamily {
  FilterBank bank;
  WaveletPair psi;
};

/// ParameterOutOfRange when |r| > 2^{-1/2}.
RFamily r_family(double r);

/// D^{-j} lambda_k psi, i.e. 2^{j/2} psi(3^j x - k).
TriadicFn wavelet_system(const TriadicFn& psi, int j, std::int64_t k);

/// psi_{i,j,k} for i over the pair, |j| <= J, |k| <= K, ordered by j, k, i.
std::vector<TriadicFn> wavelet_system_family(const WaveletPair& psi, int J, int K);

/// Largest coefficient defect among R S_m e_n = D R e_n, R(e_k e_n) = lambda_k R e_n
/// for |n|, |k| <= K, D lambda_j = lambda_{3j} D on seeded random inputs, and
/// R_inf(v) = R_inf(promote(v, level + 1..3)).
double intertwining_residual(int K, std::uint64_t seed = 42);

}  // namespace limitwave
