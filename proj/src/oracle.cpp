#include "qubitswap/oracle.hpp"

#include "qubitswap/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

namespace qubitswap::oracle {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
bool parse_field(std::string_view s, T& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

} // namespace

std::string_view to_string(PathSource s) {
    switch (s) {
    case PathSource::Constant: return "constant";
    case PathSource::Schedule: return "schedule";
    case PathSource::Gbm: return "gbm";
    case PathSource::Replay: return "replay";
    }
    return "unknown";
}

PricePath::PricePath(std::vector<PricePoint> points, PathSource source)
    : points_(std::move(points)), source_(source) {
    if (points_.empty()) {
        throw DomainError("price path is empty");
    }
    if (points_.front().step != 0) {
        throw DomainError("price path must start at step 0");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].price) || points_[i].price <= 0.0) {
            throw DomainError("price path has non-positive price at step " + std::to_string(points_[i].step));
        }
        if (i > 0 && points_[i].step <= points_[i - 1].step) {
            throw DomainError("price path steps must strictly increase (step " + std::to_string(points_[i].step) +
                              " follows " + std::to_string(points_[i - 1].step) + ")");
        }
    }
}

double PricePath::price_at(std::int64_t step) const {
    if (step < 0) {
        throw DomainError("negative step");
    }
    auto it = std::upper_bound(points_.begin(), points_.end(), step,
                               [](std::int64_t s, const PricePoint& p) { return s < p.step; });
    return std::prev(it)->price;
}

std::vector<double> PricePath::prices() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) {
        out.push_back(p.price);
    }
    return out;
}

double NormalSource::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalSource::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

PricePath constant_path(double price, std::int64_t steps) {
    if (steps < 1) {
        throw DomainError("path needs at least one step");
    }
    std::vector<PricePoint> pts;
    pts.reserve(static_cast<std::size_t>(steps));
    for (std::int64_t t = 0; t < steps; ++t) {
        pts.push_back({t, price});
    }
    return PricePath(std::move(pts), PathSource::Constant);
}

PricePath schedule_path(const std::vector<PricePoint>& breakpoints, std::int64_t steps) {
    if (steps < 1) {
        throw DomainError("path needs at least one step");
    }
    const PricePath sparse(breakpoints, PathSource::Schedule);
    std::vector<PricePoint> pts;
    pts.reserve(static_cast<std::size_t>(steps));
    for (std::int64_t t = 0; t < steps; ++t) {
        pts.push_back({t, sparse.price_at(t)});
    }
    return PricePath(std::move(pts), PathSource::Schedule);
}

PricePath gbm_path(const GbmParams& params) {
    if (!std::isfinite(params.initial_price) || params.initial_price <= 0.0) {
        throw DomainError("GBM initial price must be positive");
    }
    if (!std::isfinite(params.sigma) || params.sigma < 0.0 || !std::isfinite(params.mu)) {
        throw DomainError("GBM requires finite mu and sigma >= 0");
    }
    if (params.steps < 1) {
        throw DomainError("GBM path needs at least one step");
    }
    NormalSource normal(params.seed);
    const double drift = params.mu - 0.5 * params.sigma * params.sigma;
    std::vector<PricePoint> pts;
    pts.reserve(static_cast<std::size_t>(params.steps));
    double p = params.initial_price;
    pts.push_back({0, p});
    for (std::int64_t t = 1; t < params.steps; ++t) {
        p *= std::exp(drift + params.sigma * normal.next());
        pts.push_back({t, p});
    }
    return PricePath(std::move(pts), PathSource::Gbm);
}

PoolState apply_oracle_update(const PoolState& state, OraclePrice p_new) {
    if (state.z().is_constant_product()) {
        return PoolState::on_curve(state.x(), state.y(), p_new, state.z(), state.k());
    }
    return PoolState::anchored(state.x(), state.y(), p_new, state.z());
}

PricePath read_price_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw DomainError("price CSV line 1: missing header `step,price`");
    }
    ++line_no;
    if (trim(line) != "step,price") {
        throw DomainError("price CSV line 1: expected header `step,price`, got `" + std::string(trim(line)) + "`");
    }

    std::vector<PricePoint> pts;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) {
            continue;
        }
        const auto where = "price CSV line " + std::to_string(line_no) + ": ";
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
            throw DomainError(where + "expected two fields `step,price`");
        }
        PricePoint pt{};
        if (!parse_field(row.substr(0, comma), pt.step)) {
            throw DomainError(where + "invalid step `" + std::string(row.substr(0, comma)) + "`");
        }
        if (!parse_field(row.substr(comma + 1), pt.price)) {
            throw DomainError(where + "invalid price `" + std::string(row.substr(comma + 1)) + "`");
        }
        if (!std::isfinite(pt.price) || pt.price <= 0.0) {
            throw DomainError(where + "price must be positive");
        }
        if (pts.empty() ? pt.step != 0 : pt.step <= pts.back().step) {
            throw DomainError(where + (pts.empty() ? "first step must be 0" : "steps must strictly increase"));
        }
        pts.push_back(pt);
    }
    if (pts.empty()) {
        throw DomainError("price CSV has no rows");
    }
    return PricePath(std::move(pts), PathSource::Replay);
}

PricePath read_price_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open price CSV " + path);
    }
    return read_price_csv(in);
}

void write_price_csv(std::ostream& out, const PricePath& path) {
    out << "step,price\n";
    for (const auto& p : path.points()) {
        out << p.step << ',' << format_number(p.price) << '\n';
    }
}

} // namespace qubitswap::oracle
