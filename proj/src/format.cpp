#include "qubitswap/format.hpp"

#include "qubitswap/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace qubitswap {
namespace {

constexpr std::string_view kMissing = "infeasible";

std::string render(const Cell& c, bool for_json) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return for_json ? "null" : std::string(kMissing);
            } else if constexpr (std::is_same_v<T, double>) {
                if (for_json && !std::isfinite(v)) {
                    return "null";
                }
                return format_number(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                if (!for_json) {
                    return v;
                }
                std::string q = "\"";
                for (char ch : v) {
                    if (ch == '"' || ch == '\\') {
                        q += '\\';
                    }
                    q += ch;
                }
                return q + "\"";
            }
        },
        c);
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

OutputFormat parse_output_format(std::string_view s) {
    if (s == "csv") {
        return OutputFormat::Csv;
    }
    if (s == "json") {
        return OutputFormat::Json;
    }
    if (s == "table" || s == "pretty-table") {
        return OutputFormat::Table;
    }
    throw DomainError("unknown output format '" + std::string(s) + "' (expected csv, json or table)");
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw std::logic_error("row width does not match the table header");
    }
    rows_.push_back(std::move(row));
}

void Table::write(std::ostream& out, OutputFormat format) const {
    switch (format) {
    case OutputFormat::Csv: write_csv(out); break;
    case OutputFormat::Json: write_json(out); break;
    case OutputFormat::Table: write_pretty(out); break;
    }
}

void Table::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << columns_[i];
    }
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << render(row[i], false);
        }
        out << '\n';
    }
}

void Table::write_json(std::ostream& out) const {
    out << '[';
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        out << (r ? ",\n " : "\n ") << '{';
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            out << (i ? ", " : "") << '"' << columns_[i] << "\": " << render(rows_[r][i], true);
        }
        out << '}';
    }
    out << (rows_.empty() ? "]\n" : "\n]\n");
}

void Table::write_pretty(std::ostream& out) const {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(columns_.size());
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        width[i] = columns_[i].size();
    }
    for (const auto& row : rows_) {
        auto& rendered = cells.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string s;
            if (const double* d = std::get_if<double>(&row[i]); d && std::isfinite(*d)) {
                char buf[64];
                const auto res = std::to_chars(buf, buf + sizeof(buf), *d, std::chars_format::general, 10);
                s.assign(buf, res.ptr);
            } else {
                s = render(row[i], false);
            }
            width[i] = std::max(width[i], s.size());
            rendered.push_back(std::move(s));
        }
    }
    auto line = [&](const std::vector<std::string>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            out << (i ? "  " : "") << std::string(width[i] - vals[i].size(), ' ') << vals[i];
        }
        out << '\n';
    };
    line(columns_);
    std::vector<std::string> rule;
    for (auto w : width) {
        rule.emplace_back(w, '-');
    }
    line(rule);
    for (const auto& r : cells) {
        line(r);
    }
}

} // namespace qubitswap
