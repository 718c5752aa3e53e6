#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "limitwave/cascade.hpp"
#include "limitwave/errors.hpp"
#include "limitwave/filters.hpp"
#include "limitwave/fractal.hpp"

namespace limitwave {

using Json = nlohmann::ordered_json;

/// Malformed or unreadable input.
class InputError : public Error {
 public:
  using Error::Error;
};

Json read_json_file(const std::filesystem::path& path);
/// Parses inline JSON when text starts with '[', '{', '-' or a digit and is not an
/// existing path; otherwise reads the file.
Json read_json_arg(const std::string& text);

/// {"re": .., "im": ..}; plain numbers are accepted on input.
Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

/// {"dim": n, "coeffs": [{"k": [..], "re": .., "im": ..}]}; "k" may be a bare
/// integer when dim is 1.
Json to_json(const LaurentPoly& f);
LaurentPoly laurent_from_json(const Json& j);

/// {"breakpoints": ["p/q", ..], "values": [{"re","im"}, ..]}
Json to_json(const StepCircleFn& f);
StepCircleFn step_from_json(const Json& j);

/// {"terms": [{"n", "k", "re", "im"}]}
Json to_json(const TriadicFn& f);
TriadicFn triadic_from_json(const Json& j);

Json to_json(const IntMatrix& A);
/// A bare integer N stands for the 1x1 matrix [N].
IntMatrix matrix_from_json(const Json& j);

/// {"A": [[..]], "filters": [LaurentPoly..], "low_pass": a}
Json to_json(const FilterBank& bank);
FilterBank bank_from_json(const Json& j);

/// Either {"A": .., "m": LaurentPoly|StepCircleFn, "B": [["p/q","r/s"], ..]}
/// or a bare function, in which case `fallback` supplies the matrix.
Filter filter_from_json(const Json& j, const std::optional<IntMatrix>& fallback = std::nullopt);

}  // namespace limitwave
