#include "limitwave/json_io.hpp"

#include <cctype>
#include <fstream>

namespace limitwave {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

MultiIndex index_from_json(const Json& k) {
  if (k.is_number_integer()) return {k.get<std::int64_t>()};
  if (!k.is_array()) throw InputError("index must be an integer or an array of integers");
  return k.get<MultiIndex>();
}

bool is_step_json(const Json& j) { return j.is_object() && j.contains("breakpoints"); }

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Json read_json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  const bool inline_json = first != std::string::npos &&
                           (text[first] == '[' || text[first] == '{' || text[first] == '-' ||
                            std::isdigit(static_cast<unsigned char>(text[first])));
  if (inline_json && !std::filesystem::exists(text)) {
    try {
      return Json::parse(text);
    } catch (const Json::exception& e) {
      throw InputError(std::string("inline JSON: ") + e.what());
    }
  }
  return read_json_file(text);
}

Json complex_to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_object()) throw InputError("complex value must be a number or {re, im}");
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

Json to_json(const LaurentPoly& f) {
  Json coeffs = Json::array();
  for (const auto& [k, c] : f.coeffs()) {
    Json t = complex_to_json(c);
    Json e;
    e["k"] = k;
    e["re"] = t["re"];
    e["im"] = t["im"];
    coeffs.push_back(std::move(e));
  }
  return Json{{"dim", f.dim()}, {"coeffs", std::move(coeffs)}};
}

LaurentPoly laurent_from_json(const Json& j) {
  try {
    const int dim = j.value("dim", 1);
    if (dim < 1) throw InputError("dim must be positive");
    LaurentPoly f(dim);
    for (const auto& e : field(j, "coeffs")) {
      MultiIndex k = index_from_json(field(e, "k"));
      if (static_cast<int>(k.size()) != dim) throw InputError("index length differs from dim");
      f += LaurentPoly::monomial(std::move(k), complex_from_json(e));
    }
    return f;
  } catch (const Json::exception& e) {
    throw InputError(std::string("Laurent polynomial: ") + e.what());
  }
}

Json to_json(const StepCircleFn& f) {
  Json bp = Json::array(), vals = Json::array();
  for (const auto& b : f.breakpoints()) bp.push_back(to_string(b));
  for (const auto& v : f.values()) vals.push_back(complex_to_json(v));
  return Json{{"breakpoints", std::move(bp)}, {"values", std::move(vals)}};
}

StepCircleFn step_from_json(const Json& j) {
  try {
    std::vector<Rational> bp;
    for (const auto& b : field(j, "breakpoints"))
      bp.push_back(b.is_string() ? parse_rational(b.get<std::string>()) : Rational(b.get<std::int64_t>()));
    std::vector<Complex> vals;
    for (const auto& v : field(j, "values")) vals.push_back(complex_from_json(v));
    return StepCircleFn(std::move(bp), std::move(vals));
  } catch (const Json::exception& e) {
    throw InputError(std::string("step function: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("step function: ") + e.what());
  }
}

Json to_json(const TriadicFn& f) {
  Json terms = Json::array();
  for (const auto& [k, c] : f.terms())
    terms.push_back(Json{{"n", f.level()}, {"k", k}, {"re", c.real()}, {"im", c.imag()}});
  return Json{{"terms", std::move(terms)}};
}

TriadicFn triadic_from_json(const Json& j) {
  try {
    TriadicFn f;
    for (const auto& t : field(j, "terms"))
      f = tri_add(f, TriadicFn::piece(field(t, "n").get<int>(), field(t, "k").get<std::int64_t>(),
                                      complex_from_json(t)));
    return f;
  } catch (const Json::exception& e) {
    throw InputError(std::string("triadic function: ") + e.what());
  }
}

Json to_json(const IntMatrix& A) { return Json(A); }

IntMatrix matrix_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return {{j.get<std::int64_t>()}};
    if (j.is_object()) return matrix_from_json(field(j, "A"));
    return j.get<IntMatrix>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("matrix: ") + e.what());
  }
}

Json to_json(const FilterBank& bank) {
  Json filters = Json::array();
  for (const auto& f : bank.filters) filters.push_back(to_json(f));
  return Json{{"A", to_json(bank.spec.matrix())},
              {"filters", std::move(filters)},
              {"low_pass", bank.low_pass}};
}

FilterBank bank_from_json(const Json& j) {
  try {
    DilationSpec spec = make_dilation(matrix_from_json(field(j, "A")));
    std::vector<LaurentPoly> filters;
    for (const auto& f : field(j, "filters")) filters.push_back(laurent_from_json(f));
    std::optional<std::size_t> lp;
    if (j.contains("low_pass")) lp = j.at("low_pass").get<std::size_t>();
    return FilterBank(std::move(filters), std::move(spec), lp);
  } catch (const Json::exception& e) {
    throw InputError(std::string("filter bank: ") + e.what());
  }
}

Filter filter_from_json(const Json& j, const std::optional<IntMatrix>& fallback) {
  const bool wrapped = j.is_object() && j.contains("m");
  const Json& fn = wrapped ? j.at("m") : j;
  std::optional<IntMatrix> A = fallback;
  if (wrapped && j.contains("A")) A = matrix_from_json(j.at("A"));
  if (!A) throw InputError("no dilation matrix: pass --matrix or include \"A\"");
  DilationSpec spec = make_dilation(*A);
  if (!is_step_json(fn)) {
    if (wrapped && j.contains("B")) throw InputError("multiplicity sets need a step filter");
    return make_filter(laurent_from_json(fn), std::move(spec));
  }
  std::optional<ArcSet> B;
  if (wrapped && j.contains("B")) {
    std::vector<std::pair<Rational, Rational>> arcs;
    try {
      for (const auto& a : j.at("B"))
        arcs.emplace_back(parse_rational(a.at(0).get<std::string>()),
                          parse_rational(a.at(1).get<std::string>()));
    } catch (const std::exception& e) {
      throw InputError(std::string("multiplicity set: ") + e.what());
    }
    B = ArcSet(arcs);
  }
  return make_filter(step_from_json(fn), std::move(spec), std::move(B));
}

}  // namespace limitwave
