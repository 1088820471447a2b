#pragma once

#include "qubitswap/cli.hpp"

#include <charconv>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace qubitswap::test {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

inline CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/// Parsed CSV: header plus rows of raw fields.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        throw std::out_of_range("no column " + name);
    }

    double num(std::size_t row, const std::string& name) const {
        const std::string& s = rows.at(row).at(col(name));
        double v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw std::invalid_argument("not a number: " + s);
        }
        return v;
    }
};

inline Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) {
            fields.push_back(field);
        }
        if (first) {
            csv.header = fields;
            first = false;
        } else {
            csv.rows.push_back(fields);
        }
    }
    return csv;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("qubitswap-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace qubitswap::test
