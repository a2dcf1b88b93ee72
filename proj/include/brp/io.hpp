#pragma once

#include "brp/chargroup.hpp"
#include "brp/harness.hpp"
#include "brp/lincomb.hpp"
#include "brp/poly.hpp"
#include "brp/signature.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace brp {

using Json = nlohmann::ordered_json;

enum class Mode { exact, numeric };

/// Exact coefficients serialize as "num/den" strings, numeric ones as numbers.
Json coeff_to_json(const Rational& c, Mode mode);
/// Accepts a rational string or a JSON number (converted exactly from its binary value).
Rational coeff_from_json(const Json& j);

Json to_json(const LinCombQ& x, Mode mode = Mode::exact);
Json to_json(const TensorLinCombQ& x, Mode mode = Mode::exact);
LinCombQ lincomb_from_json(const Json& j, int d);

Json to_json(const FunctionalQ& a, Mode mode = Mode::exact);
Json to_json(const BranchedSignature& sig, Mode mode = Mode::exact);
/// Reads {N, d, mode, entries}; optional "s" and "t" are ignored here.
FunctionalQ functional_from_json(const Json& j);

Json to_json(const PiecewiseLinearPath& path);
PiecewiseLinearPath path_from_json(const Json& j);

/// {"e", "d", "components": [[{"i,j,...": coeff}, ...] per f_a]}, or the string "exp".
Json to_json(const Field& f);
Field field_from_json(const Json& j);

/// {"field", "path", "y0", "degrees", "base_point", "scales", "tolerance", "p",
///  "allow_closed_form"}. Path and field are inline objects or file names.
ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base_dir = {});

void write_rows_csv(std::ostream& out, const std::vector<RemainderRow>& rows);

Json read_json_file(const std::filesystem::path& file);

}  // namespace brp
