#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ncf::cli {

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

Json to_json(const Value& v)
{
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else {
                return x;
            }
        },
        v);
}

std::string to_text(const Value& v)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(x);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(x);
            } else {
                return x;
            }
        },
        v);
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

// Scalars print bare, containers as compact JSON.
std::string summary_text(const Json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    return v.dump();
}

std::string render_json(const Report& r)
{
    Json doc = Json::object();
    doc["command"] = r.command;
    doc["config"] = r.config;
    Json results = Json::array();
    for (const Row& row : r.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < r.columns.size(); ++i) {
            obj[r.columns[i]] = to_json(row[i]);
        }
        results.push_back(std::move(obj));
    }
    doc["results"] = std::move(results);
    if (!r.summary.empty()) {
        doc["summary"] = r.summary;
    }
    return doc.dump(2) + "\n";
}

std::string render_csv(const Report& r)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        out << (i ? "," : "") << csv_field(r.columns[i]);
    }
    out << "\n";
    for (const Row& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_field(to_text(row[i]));
        }
        out << "\n";
    }
    return out.str();
}

std::string render_plain(const Report& r)
{
    std::ostringstream out;
    out << "# ncf " << r.command << "\n";
    if (!r.rows.empty()) {
        const std::size_t cols = r.columns.size();
        std::vector<std::vector<std::string>> cells{r.columns};
        std::vector<std::size_t> width(cols, 0);
        for (const Row& row : r.rows) {
            std::vector<std::string> line;
            for (const Value& v : row) {
                line.push_back(v.index() == 0 ? "-" : to_text(v));
            }
            cells.push_back(std::move(line));
        }
        for (const auto& line : cells) {
            for (std::size_t i = 0; i < cols; ++i) {
                width[i] = std::max(width[i], line[i].size());
            }
        }
        for (const auto& line : cells) {
            std::string text;
            for (std::size_t i = 0; i < cols; ++i) {
                text += line[i];
                if (i + 1 < cols) {
                    text += std::string(width[i] - line[i].size() + 2, ' ');
                }
            }
            out << text << "\n";
        }
    }
    for (const auto& [key, value] : r.summary.items()) {
        out << key << ": " << summary_text(value) << "\n";
    }
    return out.str();
}

}  // namespace

std::string render(const Report& report, Format format)
{
    switch (format) {
    case Format::Json:
        return render_json(report);
    case Format::Csv:
        return render_csv(report);
    case Format::Plain:
        break;
    }
    return render_plain(report);
}

}  // namespace ncf::cli
