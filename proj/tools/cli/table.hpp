#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace msgf::cli {

/// Empty, integer, real or text cell.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);

/// {"columns": [...], "rows": [{column: value, ...}, ...]}; non-finite reals become null.
nlohmann::ordered_json table_json(const Table& t);

/// Fixed JSON layout: two-space indent, keys in insertion order, shortest round-trip reals.
void write_json(std::ostream& os, const nlohmann::ordered_json& doc);

}  // namespace msgf::cli
