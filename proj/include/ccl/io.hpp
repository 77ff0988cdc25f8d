#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ccl/inference.hpp"
#include "ccl/psat.hpp"
#include "ccl/ranking.hpp"
#include "ccl/theory.hpp"
#include "ccl/worlds.hpp"

namespace ccl::io {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path);

std::string_view to_string(Violation::Kind kind);

/// {"lower": "p/q", "upper": "p/q", "lower_dec", "upper_dec", "method", "epsilon": "p/q"}
Json to_json(const IntervalResult& interval);
Json to_json(const ValidationReport& report);
Json to_json(const BisectionResult& result);
/// Worlds (choice image and true atoms) and, per space, the world classes.
Json to_json(const WorldSpace& worlds);
Json to_json(const ranking::EvaluationReport& report);

std::string render_table(const IntervalResult& interval);
std::string render_table(const ValidationReport& report);
std::string render_table(const WorldSpace& worlds);
std::string render_table(const ranking::EvaluationReport& report);

} // namespace ccl::io
