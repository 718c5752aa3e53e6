#include "limitwave/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "limitwave/direct_limit.hpp"
#include "limitwave/errors.hpp"
#include "limitwave/solenoid.hpp"

#ifndef LIMITWAVE_DEFAULT_PRESET_DIR
#define LIMITWAVE_DEFAULT_PRESET_DIR "presets"
#endif

namespace limitwave::cli {
namespace {

double parse_number(const std::string& text) {
  try {
    if (text.find('/') != std::string::npos) return parse_rational(text).convert_to<double>();
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError("not a number: " + text);
  }
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(std::string("missing ") + flag);
  return value;
}

std::optional<IntMatrix> matrix_arg(const RunConfig& cfg) {
  if (cfg.matrix.empty()) return std::nullopt;
  return matrix_from_json(read_json_arg(cfg.matrix));
}

Filter load_filter(const RunConfig& cfg) {
  return filter_from_json(read_json_arg(require(cfg.filter, "--filter")), matrix_arg(cfg));
}

FilterBank load_bank(const RunConfig& cfg) {
  return bank_from_json(read_json_arg(require(cfg.bank, "--bank")));
}

Json filter_json(const Filter& f) {
  Json j;
  j["A"] = to_json(f.spec.matrix());
  j["m"] = f.is_laurent() ? to_json(f.laurent()) : to_json(f.step());
  return j;
}

Quadrature parse_quadrature(const std::string& q) {
  if (q == "simpson") return Quadrature::Simpson;
  if (q == "extrapolated" || q == "simpson-extrapolated") return Quadrature::SimpsonTailExtrapolated;
  throw InputError("unknown quadrature: " + q);
}

// Each stage appends checks; failures inside a stage are recorded and the
// caller decides whether to continue.
using Stage = std::function<void(Report&)>;

void run_stage(Report& rep, const std::string& name, const Stage& stage) {
  try {
    stage(rep);
  } catch (const std::exception& e) {
    rep.add_failure(name, e.what());
  }
}

// ---------------------------------------------------------------------------
// Shared check groups.

void bank_checks(Report& rep, const FilterBank& bank, const RunConfig& cfg) {
  rep.add("bank", max_residual(verify_filter_bank(bank)), cfg.tolerance("bank", 1e-12));
  rep.add("unitarity", bank_unitarity_defect(bank, 64, cfg.seed), cfg.tolerance("unitarity", 1e-10));
}

void cuntz_checks(Report& rep, const FilterBank& bank, int K, const RunConfig& cfg) {
  rep.add("cuntz", verify_cuntz(bank, K), cfg.tolerance("cuntz", 1e-12));
}

void gram_checks(Report& rep, const FilterBank& bank, int J, int K, const RunConfig& cfg) {
  const auto family = wavelet_family(wavelet_generators(bank), J, K);
  const GramDeviation d = gram_deviation(gram_matrix(family));
  const double tol = cfg.tolerance("gram", 1e-12);
  rep.add("gram_diagonal", d.diagonal, tol);
  rep.add("gram_offdiagonal", d.off_diagonal, tol);
  rep.data["family_size"] = family.size();
}

struct CascadeOptions {
  CascadeParams params;
  int K = 40;
  bool partition_of_unity = true;
  double probe_radius = 0.25;
  double scaling_tol = 1e-4;
  double pou_tol = 2e-2;
};

void cascade_checks(Report& rep, const LaurentPoly& m, const DilationSpec& spec,
                    const CascadeOptions& opt, const RunConfig& cfg) {
  const SampledFn phi = scaling_function(m, spec, opt.params);
  const double scaling = check_scaling_identity(phi, m, spec);
  rep.data["scaling_residual"] = scaling;
  rep.add("scaling_identity", scaling, cfg.tolerance("scaling_identity", opt.scaling_tol));
  if (opt.partition_of_unity) {
    try {
      const double pou = check_partition_of_unity(phi, opt.K);
      rep.data["pou_deviation"] = pou;
      rep.add("partition_of_unity", pou, cfg.tolerance("partition_of_unity", opt.pou_tol));
    } catch (const Diverged& e) {
      rep.data["pou_deviation"] = nullptr;
      rep.add_failure("partition_of_unity", e.what());
    }
  }
  rep.data["cohen_min"] = cohen_probe(m, opt.probe_radius);
  rep.data["low_pass"] = is_low_pass(m, spec).low_pass;
}

struct WindingOptions {
  CascadeParams params{20, 64.0, 1.0 / 256.0};
  int max_level = 2;
  int K = 4;
  Quadrature quadrature = Quadrature::Simpson;
  std::optional<double> tol;
};

void winding_checks(Report& rep, const Filter& f, const WindingOptions& opt, const RunConfig& cfg) {
  const SolenoidCtx ctx(f);
  const SampledFn phi = scaling_function(ctx.m(), ctx.spec(), opt.params);
  // Simpson alone is limited by the truncated sinc^2 tail, about 1.6e-3 at T = 64.
  const double fallback = opt.tol.value_or(opt.quadrature == Quadrature::Simpson ? 3e-3 : 1e-3);
  const double tol = cfg.tolerance("winding", fallback);
  Json rows = Json::array();
  bool applicable = true;
  for (int n = 0; n <= opt.max_level && applicable; ++n)
    for (int k = -opt.K; k <= opt.K; ++k) {
      const WindingReport w = winding_check(ctx, {n, LaurentPoly::monomial({k})}, phi, opt.quadrature);
      if (!w.applicable()) {
        applicable = false;
        rep.data["winding_applicable"] = false;
        rep.data["cohen_min"] = w.cohen_min;
        rep.add_failure("winding", "low-pass or Cohen probe failed; comparison not meaningful");
        break;
      }
      rows.push_back(Json{{"n", n}, {"k", k}, {"numeric", complex_to_json(w.numeric)},
                          {"exact", complex_to_json(w.exact)}, {"deviation", w.deviation}});
      rep.add("winding(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")", w.deviation, tol);
    }
  rep.data["quadrature"] = to_string(opt.quadrature);
  rep.data["winding"] = std::move(rows);
}

void tau_checks(Report& rep, const SolenoidCtx& ctx, int max_level, int radius, const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double mass = 0.0, consistency = 0.0, dutkay = 0.0;
  const int dim = ctx.spec().dim();
  for (int n = 0; n <= max_level; ++n) {
    mass = std::max(mass, std::abs(tau_integral(ctx, {n, LaurentPoly::constant(dim, 1.0)}) - 1.0));
    const LaurentPoly g = random_laurent(dim, radius, rng);
    consistency = std::max(consistency, check_consistency(ctx, g, n));
    if (dim == 1 && n <= 3) dutkay = std::max(dutkay, check_dutkay_formula(ctx, g, n));
  }
  rep.add("tau_mass", mass, cfg.tolerance("tau_mass", 1e-12));
  rep.add("consistency", consistency, cfg.tolerance("consistency", 1e-12));
  if (dim == 1) rep.add("dutkay", dutkay, cfg.tolerance("dutkay", 1e-12));
}

double pair_gram_defect(const WaveletPair& psi) {
  return gram_deviation(nu_gram({psi.psi1, psi.psi2})).max();
}

double generator_defect(const FilterBank& bank, const WaveletPair& psi) {
  const auto gens = wavelet_generators(bank);
  const TriadicFn expect[2] = {psi.psi1, psi.psi2};
  double worst = 0.0;
  for (std::size_t i = 0; i < gens.size() && i < 2; ++i)
    for (const auto& [k, c] : tri_sub(R_infinity(gens[i]), expect[i]).terms())
      worst = std::max(worst, std::abs(c));
  return worst;
}

void fractal_gram_checks(Report& rep, const WaveletPair& psi, int J, int K, const RunConfig& cfg) {
  const auto family = wavelet_system_family(psi, J, K);
  rep.add("fractal_gram", gram_deviation(nu_gram(family)).max(), cfg.tolerance("fractal_gram", 1e-12));
  rep.data["fractal_family_size"] = family.size();
}

void frame_checks(Report& rep, const Filter& f, const Rational& from, const Rational& to, std::int64_t M,
                  int count, double tol, const RunConfig& cfg) {
  if (!f.multiplicity) throw InputError("frame check needs a multiplicity set B");
  rep.add("generalized_filter", filter_residual(f), cfg.tolerance("generalized_filter", 1e-14));
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  for (int t = 0; t < count; ++t)
    worst = std::max(worst, parseval_frame_defect(random_step_function(from, to, 3, rng), *f.multiplicity, M));
  rep.add("parseval_frame", worst, cfg.tolerance("parseval_frame", tol));
}

void purity_expectation(Report& rep, Purity got, const std::string& expected) {
  rep.data["purity"] = to_string(got);
  if (!expected.empty())
    rep.add("purity", expected == to_string(got) ? 0.0 : 1.0, 0.0);
}

// ---------------------------------------------------------------------------
// Commands.

Report cmd_verify_filter(const RunConfig& cfg) {
  Report rep;
  const Filter f = load_filter(cfg);
  rep.data["N"] = f.spec.N();
  rep.data["representation"] = f.is_laurent() ? "laurent" : "step";
  rep.add(f.multiplicity ? "generalized_filter" : "filter_equation", filter_residual(f),
          cfg.tolerance("filter_equation", 1e-12));
  return rep;
}

Report cmd_verify_bank(const RunConfig& cfg) {
  Report rep;
  bank_checks(rep, load_bank(cfg), cfg);
  return rep;
}

std::vector<Complex> complex_list(const Json& j) {
  if (!j.is_array()) throw InputError("expected a JSON array");
  std::vector<Complex> v;
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

Report cmd_make_filter(const RunConfig& cfg) {
  Report rep;
  const auto A = matrix_arg(cfg);
  if (!A) throw InputError("missing --matrix");
  const auto c = complex_list(read_json_arg(require(cfg.vector, "--vector")));
  const Filter f = filter_from_unit_vector(c, make_dilation(*A));
  rep.data["filter"] = filter_json(f);
  rep.add("filter_equation", filter_residual(f), cfg.tolerance("filter_equation", 1e-12));
  return rep;
}

Report cmd_make_bank(const RunConfig& cfg) {
  Report rep;
  const auto A = matrix_arg(cfg);
  if (!A) throw InputError("missing --matrix");
  const Json basis = read_json_arg(require(cfg.basis, "--basis"));
  if (!basis.is_array()) throw InputError("--basis must be an array of vectors");
  std::vector<std::vector<Complex>> rows;
  for (const auto& row : basis) rows.push_back(complex_list(row));
  const FilterBank bank = bank_from_orthonormal_basis(rows, make_dilation(*A));
  rep.data["bank"] = to_json(bank);
  rep.add("bank", max_residual(verify_filter_bank(bank)), cfg.tolerance("bank", 1e-12));
  return rep;
}

Report cmd_purity(const RunConfig& cfg) {
  Report rep;
  rep.data["purity"] = to_string(purity_check(load_filter(cfg)));
  return rep;
}

Report cmd_cuntz(const RunConfig& cfg) {
  Report rep;
  cuntz_checks(rep, load_bank(cfg), cfg.radius.value_or(16), cfg);
  return rep;
}

Report cmd_wavelet_gram(const RunConfig& cfg) {
  Report rep;
  gram_checks(rep, load_bank(cfg), cfg.J.value_or(2), cfg.K.value_or(4), cfg);
  return rep;
}

CascadeParams cascade_params(const RunConfig& cfg) {
  CascadeParams p;
  p.depth = cfg.depth.value_or(p.depth);
  p.box = cfg.box.value_or(p.box);
  p.step = cfg.step.value_or(p.step);
  return p;
}

Report cmd_cascade(const RunConfig& cfg) {
  Report rep;
  const Filter f = load_filter(cfg);
  const SampledFn phi = scaling_function(f.laurent(), f.spec, cascade_params(cfg));
  rep.data["points"] = phi.grid.size();
  rep.data["depth"] = phi.depth;
  rep.data["low_pass"] = is_low_pass(f.laurent(), f.spec).low_pass;
  if (cfg.format == "csv") {
    std::ofstream out(require(cfg.out, "--out"));
    if (!out) throw InputError("cannot write " + cfg.out);
    out.precision(17);
    for (int i = 0; i < phi.grid.dim(); ++i) out << "x" << (i + 1) << ",";
    out << "re,im\n";
    for (std::size_t i = 0; i < phi.grid.size(); ++i) {
      for (double x : phi.grid.point(i)) out << x << ",";
      out << phi.values[i].real() << "," << phi.values[i].imag() << "\n";
    }
    rep.data["csv"] = cfg.out;
  }
  return rep;
}

Report cmd_cascade_check(const RunConfig& cfg) {
  Report rep;
  const Filter f = load_filter(cfg);
  CascadeOptions opt;
  opt.params = cascade_params(cfg);
  opt.K = cfg.K.value_or(40);
  opt.probe_radius = cfg.probe_radius.value_or(0.25);
  cascade_checks(rep, f.laurent(), f.spec, opt, cfg);
  return rep;
}

Report cmd_cantor_wavelets(const RunConfig& cfg) {
  Report rep;
  const WaveletPair psi = cantor_wavelets();
  rep.data["psi1"] = to_json(psi.psi1);
  rep.data["psi2"] = to_json(psi.psi2);
  rep.add("orthonormality", pair_gram_defect(psi), cfg.tolerance("orthonormality", 1e-12));
  rep.add("generators", generator_defect(cantor_bank(), psi), cfg.tolerance("generators", 1e-12));
  return rep;
}

Report cmd_cantor_gram(const RunConfig& cfg) {
  Report rep;
  const WaveletPair psi = cfg.r ? r_family(*cfg.r).psi : cantor_wavelets();
  fractal_gram_checks(rep, psi, cfg.J.value_or(3), cfg.K.value_or(8), cfg);
  return rep;
}

Report cmd_r_family(const RunConfig& cfg) {
  Report rep;
  if (!cfg.r) throw InputError("missing --r");
  const RFamily fam = r_family(*cfg.r);
  rep.data["bank"] = to_json(fam.bank);
  rep.data["psi1"] = to_json(fam.psi.psi1);
  rep.data["psi2"] = to_json(fam.psi.psi2);
  rep.add("bank", max_residual(verify_filter_bank(fam.bank)), cfg.tolerance("bank", 1e-12));
  rep.add("orthonormality", pair_gram_defect(fam.psi), cfg.tolerance("orthonormality", 1e-12));
  rep.add("generators", generator_defect(fam.bank, fam.psi), cfg.tolerance("generators", 1e-12));
  return rep;
}

Report cmd_tau_int(const RunConfig& cfg) {
  Report rep;
  const SolenoidCtx ctx(load_filter(cfg));
  const LaurentPoly g = laurent_from_json(read_json_arg(require(cfg.g, "--g")));
  const int n = cfg.level.value_or(0);
  rep.data["level"] = n;
  rep.data["value"] = complex_to_json(tau_integral(ctx, {n, g}));
  return rep;
}

Report cmd_tau_consistency(const RunConfig& cfg) {
  Report rep;
  const SolenoidCtx ctx(load_filter(cfg));
  tau_checks(rep, ctx, cfg.level.value_or(6), cfg.K.value_or(12), cfg);
  return rep;
}

Report cmd_winding_check(const RunConfig& cfg) {
  Report rep;
  const Filter f = cfg.filter.empty() ? make_filter(haar_low_pass(), make_dilation(2)) : load_filter(cfg);
  WindingOptions opt;
  opt.params.depth = cfg.depth.value_or(opt.params.depth);
  opt.params.box = cfg.box.value_or(opt.params.box);
  opt.params.step = cfg.step.value_or(opt.params.step);
  opt.max_level = cfg.level.value_or(opt.max_level);
  opt.K = cfg.K.value_or(opt.K);
  opt.quadrature = parse_quadrature(cfg.quadrature);
  winding_checks(rep, f, opt, cfg);
  return rep;
}

// ---------------------------------------------------------------------------
// Pipeline.

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? j.at(key).get<T>() : fallback;
}

void pipeline_classical(Report& rep, const Json& p, const RunConfig& cfg) {
  const FilterBank bank = bank_from_json(p.at("bank"));
  const LaurentPoly& low = bank.filters[bank.low_pass];
  run_stage(rep, "make-bank", [&](Report& r) { bank_checks(r, bank, cfg); });
  run_stage(rep, "purity", [&](Report& r) {
    purity_expectation(r, purity_check(low), get_or<std::string>(p, "expect_purity", ""));
  });
  run_stage(rep, "cuntz", [&](Report& r) { cuntz_checks(r, bank, get_or(p, "cuntz_radius", 16), cfg); });
  const Json gram = p.value("gram", Json::object());
  run_stage(rep, "wavelet-gram",
            [&](Report& r) { gram_checks(r, bank, get_or(gram, "J", 2), get_or(gram, "K", 4), cfg); });
  if (p.contains("cascade")) {
    const Json& c = p.at("cascade");
    CascadeOptions opt;
    opt.params = {get_or(c, "depth", 20), get_or(c, "box", 32.0), get_or(c, "step", 1.0 / 64.0)};
    opt.K = get_or(c, "K", 40);
    opt.partition_of_unity = get_or(c, "partition_of_unity", true);
    opt.scaling_tol = get_or(c, "scaling_tol", 1e-4);
    opt.pou_tol = get_or(c, "pou_tol", 2e-2);
    run_stage(rep, "cascade", [&](Report& r) { cascade_checks(r, low, bank.spec, opt, cfg); });
  }
  if (p.contains("winding")) {
    const Json& w = p.at("winding");
    WindingOptions opt;
    opt.params = {get_or(w, "depth", 20), get_or(w, "box", 64.0), get_or(w, "step", 1.0 / 256.0)};
    opt.max_level = get_or(w, "max_level", 2);
    opt.K = get_or(w, "K", 4);
    opt.quadrature = parse_quadrature(get_or<std::string>(w, "quadrature", "simpson"));
    if (w.contains("tol")) opt.tol = w.at("tol").get<double>();
    run_stage(rep, "winding-check",
              [&](Report& r) { winding_checks(r, make_filter(low, bank.spec), opt, cfg); });
  }
  if (p.contains("tau")) {
    const Json& t = p.at("tau");
    run_stage(rep, "tau-consistency", [&](Report& r) {
      tau_checks(r, SolenoidCtx(make_filter(low, bank.spec)), get_or(t, "max_level", 6),
                 get_or(t, "K", 12), cfg);
    });
  }
}

void pipeline_fractal(Report& rep, const Json& p, const RunConfig& cfg) {
  const bool has_r = p.contains("r");
  const RFamily fam = has_r ? r_family(p.at("r").get<double>()) : RFamily{cantor_bank(), cantor_wavelets()};
  run_stage(rep, "make-bank", [&](Report& r) { bank_checks(r, fam.bank, cfg); });
  run_stage(rep, "purity", [&](Report& r) {
    purity_expectation(r, purity_check(fam.bank.filters[fam.bank.low_pass]),
                       get_or<std::string>(p, "expect_purity", ""));
  });
  run_stage(rep, "cuntz", [&](Report& r) { cuntz_checks(r, fam.bank, get_or(p, "cuntz_radius", 32), cfg); });
  const Json gram = p.value("gram", Json::object());
  run_stage(rep, "wavelet-gram",
            [&](Report& r) { gram_checks(r, fam.bank, get_or(gram, "J", 2), get_or(gram, "K", 4), cfg); });
  run_stage(rep, "cantor-wavelets", [&](Report& r) {
    r.add("generators", generator_defect(fam.bank, fam.psi), cfg.tolerance("generators", 1e-12));
  });
  const Json fg = p.value("fractal_gram", Json::object());
  run_stage(rep, "cantor-gram",
            [&](Report& r) { fractal_gram_checks(r, fam.psi, get_or(fg, "J", 3), get_or(fg, "K", 8), cfg); });
  run_stage(rep, "intertwining", [&](Report& r) {
    r.add("intertwining", intertwining_residual(get_or(p, "intertwining_radius", 16), cfg.seed),
          cfg.tolerance("intertwining", 1e-12));
  });
  const Json dk = p.value("dutkay", Json::object());
  run_stage(rep, "dutkay-transform", [&](Report& r) {
    const DutkayReport d = dutkay_transform_check(get_or(dk, "J", 4), get_or(dk, "K", 6), cfg.seed);
    r.add("dutkay_chi_c", d.chi_c, 0.0);
    r.add("dutkay_gram", d.gram, cfg.tolerance("dutkay_gram", 1e-12));
    r.add("dutkay_covariance", d.covariance, cfg.tolerance("dutkay_covariance", 1e-12));
  });
  const Json t = p.value("tau", Json::object());
  run_stage(rep, "tau-consistency", [&](Report& r) {
    tau_checks(r, SolenoidCtx(make_filter(cantor_filter(), cantor_dilation())),
               get_or(t, "max_level", 6), get_or(t, "K", 12), cfg);
  });
  run_stage(rep, "winding-check", [&](Report& r) {
    const LaurentPoly& m = fam.bank.filters[fam.bank.low_pass];
    r.data["winding_applicable"] = false;
    r.data["cohen_min"] = cohen_probe(m, 0.25);
  });
}

void pipeline_frame(Report& rep, const Json& p, const RunConfig& cfg) {
  const Filter f = filter_from_json(p.at("filter"));
  const Json pv = p.value("parseval", Json::object());
  run_stage(rep, "generalized-filter", [&](Report& r) {
    // Random test functions live on the first arc of B.
    const Json& arc = p.at("filter").at("B").at(0);
    frame_checks(r, f, parse_rational(arc.at(0).get<std::string>()), parse_rational(arc.at(1).get<std::string>()),
                 get_or<std::int64_t>(pv, "M", 512), get_or(pv, "count", 10), get_or(pv, "tol", 1e-3), cfg);
  });
  run_stage(rep, "purity", [&](Report& r) {
    purity_expectation(r, purity_check(f), get_or<std::string>(p, "expect_purity", ""));
  });
}

Report cmd_pipeline(const RunConfig& cfg) {
  Report rep;
  const std::string name = require(cfg.preset, "--preset");
  const Json p = read_json_file(std::filesystem::path(preset_dir()) / (name + ".json"));
  const std::string kind = p.value("kind", "");
  rep.data["preset"] = name;
  if (kind == "classical")
    pipeline_classical(rep, p, cfg);
  else if (kind == "fractal")
    pipeline_fractal(rep, p, cfg);
  else if (kind == "frame")
    pipeline_frame(rep, p, cfg);
  else
    throw InputError("preset " + name + " has unknown kind \"" + kind + "\"");
  for (const auto& c : rep.checks)
    if (!c.pass) {
      rep.data["first_failure"] = c.name;
      break;
    }
  return rep;
}

const std::map<std::string, std::function<Report(const RunConfig&)>>& commands() {
  static const std::map<std::string, std::function<Report(const RunConfig&)>> table = {
      {"verify-filter", cmd_verify_filter},
      {"verify-bank", cmd_verify_bank},
      {"make-filter", cmd_make_filter},
      {"make-bank", cmd_make_bank},
      {"purity", cmd_purity},
      {"cuntz-check", cmd_cuntz},
      {"wavelet-gram", cmd_wavelet_gram},
      {"cascade", cmd_cascade},
      {"cascade-check", cmd_cascade_check},
      {"cantor-wavelets", cmd_cantor_wavelets},
      {"cantor-gram", cmd_cantor_gram},
      {"r-family", cmd_r_family},
      {"tau-int", cmd_tau_int},
      {"tau-consistency", cmd_tau_consistency},
      {"winding-check", cmd_winding_check},
      {"pipeline", cmd_pipeline},
  };
  return table;
}

const std::map<std::string, std::string> kDescriptions = {
    {"verify-filter", "check the (generalized) filter equation"},
    {"verify-bank", "check the filter-bank identities and fibre-matrix unitarity"},
    {"make-filter", "filter from a unit vector on the dual transversal"},
    {"make-bank", "filter bank from an orthonormal basis"},
    {"purity", "classify purity of S_m"},
    {"cuntz-check", "sum_a S_a S_a^* = 1 on basis vectors"},
    {"wavelet-gram", "Gram matrix of the direct-limit wavelet family"},
    {"cascade", "sample the scaling function by the truncated product"},
    {"cascade-check", "scaling identity, partition of unity, Cohen probe"},
    {"cantor-wavelets", "the two Cantor wavelets"},
    {"cantor-gram", "Gram matrix of the Cantor wavelet system"},
    {"r-family", "one-parameter family of Cantor multiwavelets"},
    {"tau-int", "integral of a cylinder function against tau"},
    {"tau-consistency", "mass, consistency and fibre formula for tau"},
    {"winding-check", "winding-line quadrature against tau"},
    {"pipeline", "run a bundled preset end to end"},
};

// Pulls --tol.<name> and --config out of args before CLI11 sees them.
std::vector<std::string> prescan(std::vector<std::string> args, std::map<std::string, double>& tol) {
  std::vector<std::string> rest;
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto take_value = [&](const std::string& flag) -> std::string {
      const auto eq = a.find('=');
      if (eq != std::string::npos) return a.substr(eq + 1);
      if (i + 1 >= args.size()) throw InputError(flag + " needs a value");
      return args[++i];
    };
    if (a.rfind("--tol.", 0) == 0) {
      const std::string name = a.substr(6, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 6);
      tol[name] = parse_number(take_value("--tol." + name));
    } else if (a == "--config" || a.rfind("--config=", 0) == 0) {
      config = take_value("--config");
    } else {
      rest.push_back(a);
    }
  }
  if (!config) return rest;

  const Json j = read_json_file(*config);
  if (!j.is_object()) throw InputError("config must be a JSON object");
  if (rest.empty() && j.contains("command")) rest.push_back(j.at("command").get<std::string>());
  for (const auto& [key, value] : j.items()) {
    if (key == "command") continue;
    if (key == "tol") {
      for (const auto& [name, v] : value.items())
        if (!tol.count(name)) tol[name] = v.get<double>();
      continue;
    }
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : rest) present = present || a == flag || a.rfind(flag + "=", 0) == 0;
    if (present) continue;
    rest.push_back(flag);
    rest.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  return rest;
}

}  // namespace

double RunConfig::tolerance(const std::string& name, double fallback) const {
  auto it = tol.find(name);
  return it == tol.end() ? fallback : it->second;
}

void Report::add(std::string name, double residual, double tolerance) {
  checks.push_back({std::move(name), residual, tolerance, residual <= tolerance});
}

void Report::add_failure(std::string name, const std::string& what) {
  checks.push_back({std::move(name), std::numeric_limits<double>::infinity(), 0.0, false});
  data["errors"][checks.back().name] = what;
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json Report::to_json(bool with_time) const {
  Json j;
  j["command"] = command;
  j["args"] = args;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    if (std::isfinite(c.residual))
      e["residual"] = c.residual;
    else
      e["residual"] = nullptr;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  j["pass"] = all_pass();
  j["data"] = data;
  if (with_time) j["wall_time"] = wall_time;
  j["version"] = kVersion;
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "name,residual,tolerance,pass\n";
  for (const auto& c : checks)
    os << '"' << c.name << "\"," << c.residual << "," << c.tolerance << "," << (c.pass ? "true" : "false")
       << "\n";
  return os.str();
}

std::string preset_dir() {
  if (const char* env = std::getenv("LIMITWAVE_PRESET_DIR"); env && *env) return env;
  return LIMITWAVE_DEFAULT_PRESET_DIR;
}

Report execute(const RunConfig& cfg) {
  auto it = commands().find(cfg.command);
  if (it == commands().end()) throw InputError("unknown command " + cfg.command);
  const auto start = std::chrono::steady_clock::now();
  Report rep = it->second(cfg);
  rep.command = cfg.command;
  rep.args = cfg.args;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.args = raw_args;
  std::vector<std::string> args;
  try {
    args = prescan(raw_args, cfg.tol);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  CLI::App app{"Wavelet systems from direct limits: filters, Cuntz families, cascades, Cantor "
               "wavelets and solenoid measures.",
               "limitwave"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string level, depth, J, K, radius, box, step, r, probe_radius;
  for (const auto& [name, fn] : commands()) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--filter", cfg.filter, "filter JSON (file or inline)");
    sub->add_option("--bank", cfg.bank, "filter bank JSON");
    sub->add_option("--matrix", cfg.matrix, "dilation matrix JSON, e.g. [[2]]");
    sub->add_option("--g", cfg.g, "Laurent polynomial JSON for tau-int");
    sub->add_option("--vector", cfg.vector, "unit vector for make-filter");
    sub->add_option("--basis", cfg.basis, "orthonormal basis for make-bank");
    sub->add_option("--preset", cfg.preset, "haar|d4|cantor|cantor-r|frame|quincunx");
    sub->add_option("--level", level, "cylinder level / maximal level");
    sub->add_option("--depth", depth, "product truncation P");
    sub->add_option("--J", J, "dilation range |j| <= J");
    sub->add_option("--K", K, "translation range / partition-of-unity radius");
    sub->add_option("--radius", radius, "index radius for cuntz-check");
    sub->add_option("--box", box, "box half-width T");
    sub->add_option("--step", step, "grid step h (decimal or p/q)");
    sub->add_option("--r", r, "r-family parameter");
    sub->add_option("--probe-radius", probe_radius, "Cohen probe radius");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--quadrature", cfg.quadrature, "simpson|extrapolated");
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sub->footer("--tol.<name> VALUE overrides a check tolerance; --config FILE supplies flags as JSON.");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    auto int_opt = [](const std::string& s) -> std::optional<int> {
      if (s.empty()) return std::nullopt;
      const double v = parse_number(s);
      if (v != std::floor(v)) throw InputError("expected an integer: " + s);
      return static_cast<int>(v);
    };
    auto dbl_opt = [](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_number(s);
    };
    cfg.level = int_opt(level);
    cfg.depth = int_opt(depth);
    cfg.J = int_opt(J);
    cfg.K = int_opt(K);
    cfg.radius = int_opt(radius);
    cfg.box = dbl_opt(box);
    cfg.step = dbl_opt(step);
    cfg.r = dbl_opt(r);
    cfg.probe_radius = dbl_opt(probe_radius);

    const Report rep = execute(cfg);
    const std::string text = cfg.format == "csv" && cfg.command != "cascade" ? rep.to_csv()
                                                                              : rep.to_json().dump(2) + "\n";
    if (!cfg.out.empty() && cfg.command != "cascade") {
      std::ofstream f(cfg.out);
      if (!f) throw InputError("cannot write " + cfg.out);
      f << text;
    } else {
      out << text;
    }
    return rep.all_pass() ? kPass : kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace limitwave::cli
