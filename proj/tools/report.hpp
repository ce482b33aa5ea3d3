#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ncf::cli {

using Json = nlohmann::ordered_json;

/// One table cell. Big integers travel as decimal strings.
using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string>;
using Row = std::vector<Value>;

enum class Format { Json, Csv, Plain };

/// Output of one run: config echo, a flat table and an optional summary object.
struct Report {
    std::string command;
    Json config = Json::object();
    std::vector<std::string> columns;
    std::vector<Row> rows;  ///< each row has one value per column
    Json summary = Json::object();
};

/// %.17g
std::string format_double(double v);

std::string render(const Report& report, Format format);

}  // namespace ncf::cli
