#pragma once

#include "arrmc/katz.hpp"
#include "arrmc/pfaffian.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace arrmc {

/// Key order is preserved so emitted files are byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Every reader rejects fields it does not know and accepts an optional
/// "schema": 1. Every writer emits "schema": 1 first. Rationals are strings.

Json to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const Json& j);

/// Residues are keyed by hyperplane label; a missing label means a zero residue.
Json to_json(const PfaffianSystem& sys);
PfaffianSystem system_from_json(const Json& j, PfaffianSystem::Check check = PfaffianSystem::Check::Integrable);

Json to_json(const LineDirection& y);
LineDirection line_from_json(const Json& j);

Json character_to_json(const Scalar& lambda);
Scalar character_from_json(const Json& j);

/// Entries are [re, im] pairs. An all-string tuple ("p/q" entries) is exact.
Json to_json(const MonodromyTuple& t);
Json to_json(const ExactTuple& t);

struct ParsedTuple {
    MonodromyTuple numeric;
    std::optional<ExactTuple> exact;
};
ParsedTuple tuple_from_json(const Json& j);

Json matrix_to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j, const std::string& context);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// "0,1" or "1/2, -3" into rationals.
std::vector<Scalar> parse_rational_list(const std::string& text);

} // namespace arrmc
