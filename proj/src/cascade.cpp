#include "limitwave/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "limitwave/errors.hpp"

namespace limitwave {
namespace {

constexpr double kGridSlack = 1e-9;

bool is_integer(double v) { return std::abs(v - std::round(v)) <= kGridSlack; }

std::vector<double> apply_transpose_power(const DilationSpec& spec, std::vector<double> x, int j) {
  for (; j > 0; --j) x = spec.transpose_apply(x);
  for (; j < 0; ++j) x = spec.transpose_inverse_apply(x);
  return x;
}

SampledFn sample(const Grid& grid, int depth, PointFn exact) {
  SampledFn out{grid, std::vector<Complex>(grid.size()), depth, std::move(exact)};
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = out.exact(grid.point(i));
  return out;
}

}  // namespace

Grid::Grid(int dim, double T, double h) : dim_(dim), T_(T), h_(h) {
  if (dim < 1) throw ParameterOutOfRange("grid dimension must be positive");
  if (!(T > 0.0) || !(h > 0.0)) throw ParameterOutOfRange("box and step must be positive");
  const double cells = 2.0 * T / h;
  if (!is_integer(cells)) throw ParameterOutOfRange("2T/h must be an integer");
  per_axis_ = static_cast<std::size_t>(std::llround(cells)) + 1;
  size_ = 1;
  for (int i = 0; i < dim; ++i) {
    if (size_ > std::numeric_limits<std::size_t>::max() / per_axis_ || size_ * per_axis_ > 100'000'000)
      throw ParameterOutOfRange("grid has more than 1e8 points");
    size_ *= per_axis_;
  }
}

std::vector<std::size_t> Grid::axis_indices(std::size_t index) const {
  std::vector<std::size_t> a(dim_);
  for (int i = dim_ - 1; i >= 0; --i) {
    a[i] = index % per_axis_;
    index /= per_axis_;
  }
  return a;
}

std::vector<double> Grid::point(std::size_t index) const {
  const auto a = axis_indices(index);
  std::vector<double> x(dim_);
  for (int i = 0; i < dim_; ++i) x[i] = -T_ + static_cast<double>(a[i]) * h_;
  return x;
}

std::size_t Grid::flat_index(std::span<const std::size_t> axis) const {
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) idx = idx * per_axis_ + axis[i];
  return idx;
}

std::optional<std::size_t> Grid::axis_index_of(double x) const {
  const double pos = (x + T_) / h_;
  if (!is_integer(pos)) return std::nullopt;
  const long long i = std::llround(pos);
  if (i < 0 || static_cast<std::size_t>(i) >= per_axis_) return std::nullopt;
  return static_cast<std::size_t>(i);
}

Complex scaling_product(const LaurentPoly& m, const DilationSpec& spec,
                        std::span<const double> x, int depth) {
  const double root_n = std::sqrt(static_cast<double>(spec.N()));
  std::vector<double> y(x.begin(), x.end());
  Complex prod = 1.0;
  for (int n = 1; n <= depth; ++n) {
    y = spec.transpose_inverse_apply(y);
    prod *= lp_eval(m, y) / root_n;
  }
  return prod;
}

SampledFn scaling_function(const LaurentPoly& m, const DilationSpec& spec,
                           const CascadeParams& params) {
  if (m.dim() != spec.dim()) throw DimensionMismatch("filter dimension does not match dilation");
  if (params.depth < 0) throw ParameterOutOfRange("depth must be non-negative");
  const int depth = params.depth;
  PointFn exact = [m, spec, depth](std::span<const double> x) {
    return scaling_product(m, spec, x, depth);
  };
  return sample(Grid(spec.dim(), params.box, params.step), depth, std::move(exact));
}

double check_scaling_identity(const SampledFn& phi, const LaurentPoly& m,
                              const DilationSpec& spec) {
  const double root_n = std::sqrt(static_cast<double>(spec.N()));
  const double T = phi.grid.box();
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.grid.size(); ++i) {
    const auto x = phi.grid.point(i);
    const auto ax = spec.transpose_apply(x);
    bool inside = true;
    for (double v : ax) inside = inside && std::abs(v) <= T + kGridSlack;
    if (!inside) continue;
    const Complex lhs = root_n * scaling_product(m, spec, ax, phi.depth);
    worst = std::max(worst, std::abs(lhs - lp_eval(m, x) * phi.values[i]));
  }
  return worst;
}

double check_partition_of_unity(const SampledFn& phi, int K) {
  const Grid& g = phi.grid;
  const double T = g.box(), h = g.step();
  if (K < 0) throw ParameterOutOfRange("K must be non-negative");
  if (!is_integer(1.0 / h)) throw ParameterOutOfRange("1/h must be an integer");
  if (T < K + 1 - kGridSlack && !phi.exact)
    throw BoxTooSmall("box does not cover all translates and there is no point evaluator");

  double shell = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    double far = 0.0;
    for (double v : x) far = std::max(far, std::abs(v));
    if (far >= T - 1.0) shell = std::max(shell, std::norm(phi.values[i]));
  }
  if (shell > 0.25) throw Diverged("|phi|^2 does not decay towards the box boundary");

  const int n = g.dim();
  const auto per_unit = static_cast<std::size_t>(std::llround(1.0 / h));
  std::vector<std::size_t> base(n, 0), axis(n);
  std::vector<double> y(n);
  double worst = 0.0;
  while (true) {
    double sum = 0.0;
    std::vector<int> k(n, -K);
    while (true) {
      bool on_grid = true;
      for (int i = 0; i < n; ++i) {
        y[i] = static_cast<double>(base[i]) * h + k[i];
        const auto a = g.axis_index_of(y[i]);
        on_grid = on_grid && a.has_value();
        if (a) axis[i] = *a;
      }
      // Translates that leave the box are evaluated afresh.
      sum += std::norm(on_grid ? phi.values[g.flat_index(axis)] : phi.exact(y));
      int i = 0;
      while (i < n && k[i] == K) k[i++] = -K;
      if (i == n) break;
      ++k[i];
    }
    worst = std::max(worst, std::abs(sum - 1.0));
    int i = 0;
    while (i < n && base[i] + 1 == per_unit) base[i++] = 0;
    if (i == n) break;
    ++base[i];
  }
  return worst;
}

double cohen_probe(const LaurentPoly& m, double r, int samples) {
  if (samples < 2) throw ParameterOutOfRange("cohen_probe needs at least 2 samples per axis");
  const int n = m.dim();
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (int i = 0; i < n; ++i) x[i] = -r + 2.0 * r * idx[i] / (samples - 1);
    best = std::min(best, std::abs(lp_eval(m, x)));
    int i = 0;
    while (i < n && idx[i] == samples - 1) idx[i++] = 0;
    if (i == n) break;
    ++idx[i];
  }
  return best;
}

std::vector<SampledFn> classical_wavelets(const FilterBank& bank, const SampledFn& phi) {
  const DilationSpec& spec = bank.spec;
  const LaurentPoly low = bank.filters[bank.low_pass];
  const int depth = phi.depth;
  const double root_n = std::sqrt(static_cast<double>(spec.N()));
  std::vector<SampledFn> out;
  for (std::size_t w = 0; w < bank.size(); ++w) {
    if (w == bank.low_pass) continue;
    const LaurentPoly mw = bank.filters[w];
    PointFn exact = [=](std::span<const double> x) {
      const auto y = spec.transpose_inverse_apply(x);
      return lp_eval(mw, y) / root_n * scaling_product(low, spec, y, depth);
    };
    out.push_back(sample(phi.grid, depth, std::move(exact)));
  }
  return out;
}

SampledFn wavelet_system_sample(const SampledFn& psi, const DilationSpec& spec, int j,
                                const MultiIndex& k) {
  if (static_cast<int>(k.size()) != spec.dim()) throw DimensionMismatch("translation dimension");
  if (j == 0 && std::all_of(k.begin(), k.end(), [](auto v) { return v == 0; })) return psi;
  if (!psi.exact) throw BoxTooSmall("no point evaluator to leave the sampled box");
  const double scale = std::pow(static_cast<double>(spec.N()), 0.5 * j);
  PointFn base = psi.exact;
  PointFn exact = [=](std::span<const double> x) {
    const auto y = apply_transpose_power(spec, std::vector<double>(x.begin(), x.end()), j);
    double phase = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) phase += static_cast<double>(k[i]) * y[i];
    phase -= std::round(phase);
    return scale * std::polar(1.0, 2.0 * std::numbers::pi * phase) * base(y);
  };
  return sample(psi.grid, psi.depth, std::move(exact));
}

Complex pairwise_sum(std::span<const Complex> v) {
  if (v.size() <= 8) {
    Complex acc{};
    for (auto c : v) acc += c;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

Complex simpson(std::span<const Complex> samples, double h) {
  if (samples.size() < 3 || samples.size() % 2 == 0)
    throw ParameterOutOfRange("Simpson's rule needs an odd number (>= 3) of samples");
  std::vector<Complex> w(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double c = (i == 0 || i + 1 == samples.size()) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[i] = c * samples[i];
  }
  return pairwise_sum(w) * (h / 3.0);
}

Complex quadrature_inner(const SampledFn& f, const SampledFn& g) {
  const Grid& G = f.grid;
  if (G.dim() != g.grid.dim() || G.box() != g.grid.box() || G.step() != g.grid.step())
    throw DimensionMismatch("quadrature needs a common grid");
  std::vector<Complex> terms(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    double w = 1.0;
    for (auto a : G.axis_indices(i))
      if (a == 0 || a + 1 == G.per_axis()) w *= 0.5;
    terms[i] = w * f.values[i] * std::conj(g.values[i]);
  }
  return pairwise_sum(terms) * std::pow(G.step(), G.dim());
}

Eigen::MatrixXcd quadrature_gram(const std::vector<SampledFn>& fs) {
  const auto n = static_cast<Eigen::Index>(fs.size());
  Eigen::MatrixXcd G(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      G(i, j) = quadrature_inner(fs[i], fs[j]);
      G(j, i) = std::conj(G(i, j));
    }
  return G;
}

LaurentPoly haar_low_pass() {
  const Complex c[] = {std::sqrt(0.5), std::sqrt(0.5)};
  return LaurentPoly::from_coefficients(c);
}

LaurentPoly haar_high_pass() {
  const Complex c[] = {std::sqrt(0.5), -std::sqrt(0.5)};
  return LaurentPoly::from_coefficients(c);
}

FilterBank haar_bank() { return FilterBank({haar_low_pass(), haar_high_pass()}, make_dilation(2), 0); }

LaurentPoly d4_low_pass() {
  const double s3 = std::sqrt(3.0);
  const double d = 4.0 * std::sqrt(2.0);
  const Complex c[] = {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
  return LaurentPoly::from_coefficients(c);
}

LaurentPoly d4_high_pass() {
  const auto& h = d4_low_pass();
  Complex g[4];
  for (int k = 0; k < 4; ++k) g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h.coeff({3 - k});
  return LaurentPoly::from_coefficients(g);
}

FilterBank d4_bank() { return FilterBank({d4_low_pass(), d4_high_pass()}, make_dilation(2), 0); }

Complex haar_phi_closed_form(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return Complex(std::cos(px), std::sin(px)) * (std::sin(px) / px);
}

}  // namespace limitwave
