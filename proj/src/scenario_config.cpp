#include "qubitswap/simulator.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace qubitswap::sim {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw DomainError("scenario field '" + field + "': " + msg);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.contains(key)) {
            fail(where.empty() ? key : where + "." + key, "unknown field");
        }
    }
}

std::string join(const std::string& where, const char* key) {
    return where.empty() ? key : where + "." + key;
}

const json& required(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) {
        fail(join(where, key), "missing required field");
    }
    return obj.at(key);
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) {
        fail(field, "expected a number");
    }
    return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& field) {
    if (!v.is_number_integer()) {
        fail(field, "expected an integer");
    }
    return v.get<std::int64_t>();
}

std::uint64_t seed(const json& v, const std::string& field) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(field, "expected a non-negative integer seed");
    }
    return v.get<std::uint64_t>();
}

PathSpec parse_path(const json& j, const std::string& where) {
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    const json& kind_v = required(j, where, "kind");
    if (!kind_v.is_string()) {
        fail(join(where, "kind"), "expected a string");
    }
    const auto kind = kind_v.get<std::string>();
    if (kind == "constant") {
        reject_unknown(j, where, {"kind", "price"});
        return ConstantPathSpec{number(required(j, where, "price"), join(where, "price"))};
    }
    if (kind == "schedule") {
        reject_unknown(j, where, {"kind", "points"});
        const json& pts = required(j, where, "points");
        if (!pts.is_array() || pts.empty()) {
            fail(join(where, "points"), "expected a non-empty array");
        }
        SchedulePathSpec spec;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string at = join(where, "points") + "[" + std::to_string(i) + "]";
            reject_unknown(pts[i], at, {"step", "price"});
            spec.points.push_back({integer(required(pts[i], at, "step"), at + ".step"),
                                   number(required(pts[i], at, "price"), at + ".price")});
        }
        return spec;
    }
    if (kind == "gbm") {
        reject_unknown(j, where, {"kind", "initial_price", "mu", "sigma", "seed"});
        GbmPathSpec spec;
        if (j.contains("initial_price")) {
            spec.initial_price = number(j.at("initial_price"), join(where, "initial_price"));
        }
        spec.mu = j.contains("mu") ? number(j.at("mu"), join(where, "mu")) : 0.0;
        spec.sigma = number(required(j, where, "sigma"), join(where, "sigma"));
        spec.seed = seed(required(j, where, "seed"), join(where, "seed"));
        return spec;
    }
    if (kind == "replay") {
        reject_unknown(j, where, {"kind", "file"});
        const json& f = required(j, where, "file");
        if (!f.is_string()) {
            fail(join(where, "file"), "expected a string");
        }
        return ReplayPathSpec{f.get<std::string>()};
    }
    fail(join(where, "kind"), "unknown path kind '" + kind + "' (expected constant, schedule, gbm or replay)");
}

AgentSpec parse_agents(const json& j, const std::string& where) {
    reject_unknown(j, where, {"arbitrageur", "noise"});
    AgentSpec spec;
    if (j.contains("arbitrageur")) {
        if (!j.at("arbitrageur").is_boolean()) {
            fail(join(where, "arbitrageur"), "expected true or false");
        }
        spec.arbitrageur = j.at("arbitrageur").get<bool>();
    }
    if (j.contains("noise") && !j.at("noise").is_null()) {
        const json& n = j.at("noise");
        const std::string at = join(where, "noise");
        reject_unknown(n, at, {"trades_per_step", "log_mean", "log_sigma", "max_fraction", "seed"});
        NoiseTraderSpec noise;
        if (n.contains("trades_per_step")) {
            noise.trades_per_step = integer(n.at("trades_per_step"), at + ".trades_per_step");
        }
        if (n.contains("log_mean")) {
            noise.log_mean = number(n.at("log_mean"), at + ".log_mean");
        }
        if (n.contains("log_sigma")) {
            noise.log_sigma = number(n.at("log_sigma"), at + ".log_sigma");
        }
        if (n.contains("max_fraction")) {
            noise.max_fraction = number(n.at("max_fraction"), at + ".max_fraction");
        }
        noise.seed = seed(required(n, at, "seed"), at + ".seed");
        spec.noise = noise;
    }
    return spec;
}

} // namespace

void validate(const ScenarioConfig& c) {
    auto positive = [](double v, const char* field) {
        if (!std::isfinite(v) || v <= 0.0) {
            fail(field, "must be positive and finite");
        }
    };
    positive(c.x0, "x0");
    positive(c.y0, "y0");
    positive(c.p0, "p0");
    if (c.steps < 1) {
        fail("steps", "must be at least 1");
    }
    if (c.z_values.empty()) {
        fail("z_values", "must not be empty");
    }
    for (double z : c.z_values) {
        if (!std::isfinite(z) || z < 0.0 || z > 1.0) {
            fail("z_values", "every z must lie in [0, 1]");
        }
    }
    if (const auto* n = c.agents.noise ? &*c.agents.noise : nullptr) {
        if (n->trades_per_step < 0) {
            fail("agents.noise.trades_per_step", "must be non-negative");
        }
        if (!std::isfinite(n->log_mean) || !std::isfinite(n->log_sigma) || n->log_sigma < 0.0) {
            fail("agents.noise", "log_mean must be finite and log_sigma >= 0");
        }
        if (!(n->max_fraction > 0.0 && n->max_fraction < 1.0)) {
            fail("agents.noise.max_fraction", "must lie in (0, 1)");
        }
    }
}

ScenarioConfig parse_scenario_json(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("scenario JSON is malformed: ") + e.what());
    }
    reject_unknown(j, "", {"x0", "y0", "p0", "z_values", "steps", "price_path", "agents"});

    ScenarioConfig c;
    c.base_dir = base_dir;
    c.x0 = number(required(j, "", "x0"), "x0");
    c.y0 = number(required(j, "", "y0"), "y0");
    c.p0 = number(required(j, "", "p0"), "p0");
    c.steps = integer(required(j, "", "steps"), "steps");
    const json& zs = required(j, "", "z_values");
    if (!zs.is_array()) {
        fail("z_values", "expected an array of numbers");
    }
    for (std::size_t i = 0; i < zs.size(); ++i) {
        c.z_values.push_back(number(zs[i], "z_values[" + std::to_string(i) + "]"));
    }
    c.price_path = parse_path(required(j, "", "price_path"), "price_path");
    if (j.contains("agents")) {
        c.agents = parse_agents(j.at("agents"), "agents");
    }
    validate(c);
    return c;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open scenario config " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_scenario_json(buf.str(), dir.empty() ? "." : dir.string());
}

} // namespace qubitswap::sim
