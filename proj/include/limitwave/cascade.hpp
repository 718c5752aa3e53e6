#pragma once

// Frequency-domain scaling functions phi(x) = prod_{n>=1} N^{-1/2} m((A^t)^{-n} x)
// sampled on uniform grids, with the checks that accompany them.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "limitwave/filters.hpp"

namespace limitwave {

/// Uniform grid over [-T, T]^n with step h; points are stored row-major
/// (last coordinate fastest).
class Grid {
 public:
  /// 2T/h must be an integer (ParameterOutOfRange otherwise).
  Grid(int dim, double T, double h);

  int dim() const { return dim_; }
  double box() const { return T_; }
  double step() const { return h_; }
  std::size_t per_axis() const { return per_axis_; }
  std::size_t size() const { return size_; }

  std::vector<double> point(std::size_t index) const;
  std::vector<std::size_t> axis_indices(std::size_t index) const;
  std::size_t flat_index(std::span<const std::size_t> axis) const;
  /// Grid index of the coordinate x along one axis, if x is a grid node.
  std::optional<std::size_t> axis_index_of(double x) const;

 private:
  int dim_;
  double T_;
  double h_;
  std::size_t per_axis_;
  std::size_t size_;
};

using PointFn = std::function<Complex(std::span<const double>)>;

struct SampledFn {
  Grid grid;
  std::vector<Complex> values;
  int depth = 0;
  /// Re-evaluates the same truncated product at any point.
  PointFn exact;
};

struct CascadeParams {
  int depth = 20;
  double box = 32.0;
  double step = 1.0 / 64.0;
};

/// phi_P(x) at one point.
Complex scaling_product(const LaurentPoly& m, const DilationSpec& spec,
                        std::span<const double> x, int depth);

SampledFn scaling_function(const LaurentPoly& m, const DilationSpec& spec,
                           const CascadeParams& params = {});

/// max over grid points x with A^t x inside the box of
/// |N^{1/2} phi(A^t x) - m(x) phi(x)|, phi(A^t x) evaluated afresh.
double check_scaling_identity(const SampledFn& phi, const LaurentPoly& m,
                              const DilationSpec& spec);

/// max over the [0,1)^n grid of |sum_{|k|_inf <= K} |phi(x+k)|^2 - 1|.
/// Translates outside the box are re-evaluated (BoxTooSmall when phi has no
/// evaluator). Diverged when |phi|^2 exceeds 0.25 on the outermost unit shell
/// of the box.
double check_partition_of_unity(const SampledFn& phi, int K);

/// min |m(x)| over a grid of `samples` points per axis on [-r, r]^n.
double cohen_probe(const LaurentPoly& m, double r, int samples = 257);

/// psi_w(x) = N^{-1/2} m_w((A^t)^{-1} x) phi((A^t)^{-1} x) for every w != low_pass.
std::vector<SampledFn> classical_wavelets(const FilterBank& bank, const SampledFn& phi);

/// N^{j/2} e^{2 pi i k.(A^t)^j x} psi((A^t)^j x) on the grid of psi.
SampledFn wavelet_system_sample(const SampledFn& psi, const DilationSpec& spec, int j,
                                const MultiIndex& k);

/// Trapezoid rule over the common grid, pairwise-summed.
Complex quadrature_inner(const SampledFn& f, const SampledFn& g);
Eigen::MatrixXcd quadrature_gram(const std::vector<SampledFn>& fs);

/// Pairwise (cascade) summation; result is independent of thread schedule.
Complex pairwise_sum(std::span<const Complex> v);

/// Composite Simpson rule on equally spaced samples (odd count).
Complex simpson(std::span<const Complex> samples, double h);

// Reference filters.
LaurentPoly haar_low_pass();
LaurentPoly haar_high_pass();
FilterBank haar_bank();
LaurentPoly d4_low_pass();
LaurentPoly d4_high_pass();
FilterBank d4_bank();

/// e^{i pi x} sin(pi x) / (pi x), the Haar scaling function in frequency.
Complex haar_phi_closed_form(double x);

}  // namespace limitwave
