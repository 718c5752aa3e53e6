#include "limitwave/dilation.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "limitwave/errors.hpp"

namespace limitwave {
namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw SupportOverflow("integer index overflow");
  }
  return static_cast<std::int64_t>(v);
}

IntMatrix transpose(const IntMatrix& A) {
  const std::size_t n = A.size();
  IntMatrix T(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) T[j][i] = A[i][j];
  return T;
}

IntMatrix minor_of(const IntMatrix& A, std::size_t row, std::size_t col) {
  IntMatrix M;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (i == row) continue;
    std::vector<std::int64_t> r;
    for (std::size_t j = 0; j < A.size(); ++j)
      if (j != col) r.push_back(A[i][j]);
    M.push_back(std::move(r));
  }
  return M;
}

IntMatrix adjugate(const IntMatrix& A) {
  const std::size_t n = A.size();
  IntMatrix adj(n, std::vector<std::int64_t>(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t c = integer_determinant(minor_of(A, j, i));
      adj[i][j] = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

std::vector<i128> mat_vec(const IntMatrix& M, const MultiIndex& k) {
  std::vector<i128> out(M.size(), 0);
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j)
      out[i] += static_cast<i128>(M[i][j]) * k[j];
  return out;
}

bool divisible(const std::vector<i128>& v, std::int64_t det) {
  for (i128 x : v)
    if (x % det != 0) return false;
  return true;
}

// Colexicographic enumeration of [0, bound]^n (last coordinate most
// significant); greedy choice of representatives inequivalent modulo the
// lattice M Z^n, where membership is tested through adj(M).
std::vector<MultiIndex> transversal(int n, std::int64_t bound, std::int64_t N,
                                    const IntMatrix& adjM, std::int64_t det) {
  std::vector<MultiIndex> reps;
  MultiIndex v(n, 0);
  while (true) {
    bool fresh = true;
    for (const auto& r : reps) {
      MultiIndex diff(n);
      for (int i = 0; i < n; ++i) diff[i] = v[i] - r[i];
      if (divisible(mat_vec(adjM, diff), det)) {
        fresh = false;
        break;
      }
    }
    if (fresh) {
      reps.push_back(v);
      if (static_cast<std::int64_t>(reps.size()) == N) break;
    }
    int i = 0;
    while (i < n && v[i] == bound) v[i++] = 0;
    if (i == n) break;
    ++v[i];
  }
  if (static_cast<std::int64_t>(reps.size()) != N) {
    throw DualityFailure("transversal search box does not contain N classes");
  }
  return reps;
}

}  // namespace

std::int64_t integer_determinant(const IntMatrix& A) {
  const std::size_t n = A.size();
  if (n == 0) return 1;
  std::vector<std::vector<i128>> M(n, std::vector<i128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
  i128 sign = 1;
  i128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && M[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return narrow(sign * M[n - 1][n - 1]);
}

DilationSpec::DilationSpec(IntMatrix A) : dim_(static_cast<int>(A.size())), A_(std::move(A)) {
  if (dim_ == 0) throw DimensionMismatch("dilation matrix is empty");
  for (const auto& row : A_)
    if (static_cast<int>(row.size()) != dim_)
      throw DimensionMismatch("dilation matrix must be square");

  det_ = integer_determinant(A_);
  if (det_ == 0) throw SingularMatrix("dilation matrix is singular");
  N_ = det_ < 0 ? -det_ : det_;

  Eigen::MatrixXd Ad(dim_, dim_);
  std::int64_t max_entry = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      Ad(i, j) = static_cast<double>(A_[i][j]);
      max_entry = std::max(max_entry, A_[i][j] < 0 ? -A_[i][j] : A_[i][j]);
    }
  Eigen::EigenSolver<Eigen::MatrixXd> es(Ad, false);
  for (int i = 0; i < dim_; ++i) {
    if (std::abs(es.eigenvalues()[i]) < 1.0 + 1e-9)
      throw NotExpansive("dilation matrix has an eigenvalue with |lambda| <= 1");
  }
  At_ = Ad.transpose();
  At_inv_ = At_.inverse();

  adj_ = adjugate(A_);
  adjT_ = adjugate(transpose(A_));

  const std::int64_t bound = N_ * max_entry;
  ker_ = transversal(dim_, bound, N_, adjT_, det_);
  dual_ = transversal(dim_, bound, N_, adj_, det_);

  Eigen::MatrixXcd P = pairing_matrix(*this);
  Eigen::MatrixXcd G = P * P.adjoint();
  G -= static_cast<double>(N_) * Eigen::MatrixXcd::Identity(N_, N_);
  if (G.cwiseAbs().maxCoeff() > 1e-9)
    throw DualityFailure("pairing matrix is not sqrt(N)-unitary");
}

MultiIndex DilationSpec::apply(const MultiIndex& k) const {
  auto v = mat_vec(A_, k);
  MultiIndex out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = narrow(v[i]);
  return out;
}

MultiIndex DilationSpec::apply_power(const MultiIndex& k, int j) const {
  MultiIndex out = k;
  for (int i = 0; i < j; ++i) out = apply(out);
  return out;
}

bool DilationSpec::in_image(const MultiIndex& k) const {
  return divisible(mat_vec(adj_, k), det_);
}

MultiIndex DilationSpec::preimage(const MultiIndex& k) const {
  auto v = mat_vec(adj_, k);
  if (!divisible(v, det_)) throw InternalError("index is not in A Z^n");
  MultiIndex out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = narrow(v[i] / det_);
  return out;
}

bool DilationSpec::in_transpose_image(const MultiIndex& k) const {
  return divisible(mat_vec(adjT_, k), det_);
}

std::vector<double> DilationSpec::transpose_apply(std::span<const double> x) const {
  Eigen::Map<const Eigen::VectorXd> v(x.data(), dim_);
  Eigen::VectorXd y = At_ * v;
  return {y.data(), y.data() + dim_};
}

std::vector<double> DilationSpec::transpose_inverse_apply(std::span<const double> x) const {
  Eigen::Map<const Eigen::VectorXd> v(x.data(), dim_);
  Eigen::VectorXd y = At_inv_ * v;
  return {y.data(), y.data() + dim_};
}

int DilationSpec::division_depth(const MultiIndex& k, int max_depth) const {
  MultiIndex cur = k;
  int depth = 0;
  while (depth < max_depth && in_image(cur)) {
    cur = preimage(cur);
    ++depth;
  }
  return depth;
}

DilationSpec make_dilation(IntMatrix A) { return DilationSpec(std::move(A)); }

DilationSpec make_dilation(std::int64_t N) { return DilationSpec(IntMatrix{{N}}); }

std::vector<std::vector<double>> kernel_points(const DilationSpec& spec) {
  std::vector<std::vector<double>> pts;
  for (const auto& d : spec.ker_transversal()) {
    std::vector<double> dd(d.begin(), d.end());
    auto x = spec.transpose_inverse_apply(dd);
    for (double& xi : x) {
      xi -= std::floor(xi);
      // Snap values that round to 1 back to 0.
      if (xi >= 1.0 - 1e-15) xi = 0.0;
      if (std::abs(xi) < 1e-15) xi = 0.0;
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

std::vector<LaurentPoly> kernel_dual_characters(const DilationSpec& spec) {
  std::vector<LaurentPoly> out;
  for (const auto& q : spec.dual_transversal()) out.push_back(LaurentPoly::monomial(q));
  return out;
}

Eigen::MatrixXcd pairing_matrix(const DilationSpec& spec) {
  const auto N = static_cast<Eigen::Index>(spec.N());
  Eigen::MatrixXcd P(N, N);
  const auto& ker = spec.ker_transversal();
  const auto& dual = spec.dual_transversal();
  for (Eigen::Index a = 0; a < N; ++a) {
    std::vector<double> d(ker[a].begin(), ker[a].end());
    auto x = spec.transpose_inverse_apply(d);
    for (Eigen::Index b = 0; b < N; ++b) {
      double phase = 0.0;
      for (int i = 0; i < spec.dim(); ++i) phase += static_cast<double>(dual[b][i]) * x[i];
      P(a, b) = std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
  }
  return P;
}

}  // namespace limitwave
