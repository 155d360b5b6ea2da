#include "cli/table.hpp"

#include <charconv>
#include <cmath>

namespace msgf::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    if (std::holds_alternative<std::string>(c)) return csv_field(std::get<std::string>(c));
    return {};
}

nlohmann::ordered_json cell_json(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    }
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return nullptr;
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << csv_field(t.columns[k]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell_text(row[k]);
        os << '\n';
    }
}

nlohmann::ordered_json table_json(const Table& t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (size_t k = 0; k < row.size() && k < t.columns.size(); ++k) obj[t.columns[k]] = cell_json(row[k]);
        rows.push_back(std::move(obj));
    }
    return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

void write_json(std::ostream& os, const nlohmann::ordered_json& doc) {
    os << doc.dump(2) << '\n';
}

}  // namespace msgf::cli
