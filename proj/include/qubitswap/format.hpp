#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qubitswap {

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double v);

enum class OutputFormat { Csv, Json, Table };

OutputFormat parse_output_format(std::string_view s);

/// A cell is a number, an integer, a string, or empty (rendered as
/// `infeasible` in CSV/table and null in JSON).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

/// Column-ordered result table with the three output renderings.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

    void write(std::ostream& out, OutputFormat format) const;
    void write_csv(std::ostream& out) const;
    void write_json(std::ostream& out) const;
    void write_pretty(std::ostream& out) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

} // namespace qubitswap
