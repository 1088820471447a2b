#include "qubitswap/cli.hpp"

#include "qubitswap/analytics.hpp"
#include "qubitswap/format.hpp"
#include "qubitswap/oracle.hpp"
#include "qubitswap/simulator.hpp"
#include "qubitswap/swap.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

namespace qubitswap::cli {
namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw UsageError("invalid number '" + std::string(s) + "' in " + what);
    }
    return v;
}

std::string z_label(double z) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), z);
    return std::string(buf, res.ptr);
}

struct Common {
    std::string format = "csv";
};

void add_format(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "table", "pretty-table"}))
        ->capture_default_str();
}

// ------------------------------------------------------------------ curve --

struct CurveArgs : Common {
    std::vector<double> z;
    std::optional<double> k;
    double p = 1.0;
    std::vector<double> anchor;
    std::string grid;
};

int cmd_curve(const CurveArgs& a, std::ostream& out) {
    sim::CurveSpec spec = a.k ? sim::CurveSpec{sim::FixedK{*a.k, a.p}}
                              : sim::CurveSpec{sim::AnchorPoint{a.anchor[0], a.anchor[1], a.anchor[2]}};
    Table t({"z", "x", "y"});
    for (const auto& row : sim::sweep_reserve_curve(spec, a.z, parse_grid(a.grid))) {
        t.add_row({row.z, row.x, row.y ? Cell{*row.y} : Cell{}});
    }
    t.write(out, parse_output_format(a.format));
    return kSuccess;
}

// ------------------------------------------------------------------- swap --

struct SwapArgs : Common {
    double z = 0.0, x = 0.0, y = 0.0, p = 0.0;
    std::string direction;
    std::optional<double> amount_in;
    std::optional<double> amount_out;
};

int cmd_swap(const SwapArgs& a, std::ostream& out) {
    const PoolState pool = PoolState::anchored(a.x, a.y, OraclePrice(a.p), MixParameter(a.z));
    const TradeDirection dir = parse_direction(a.direction);
    const SwapResult r = a.amount_in ? swap_exact_in(pool, dir, *a.amount_in) : swap_exact_out(pool, dir, *a.amount_out);
    Table t({"direction", "amount_in", "amount_out", "exec_price", "spot_before", "spot_after", "slippage_cost",
             "x_after", "y_after", "k"});
    t.add_row({std::string(to_string(r.direction)), r.amount_in, r.amount_out, r.exec_price, r.spot_before,
               r.spot_after, r.slippage_cost, r.new_state.x(), r.new_state.y(), r.new_state.k()});
    t.write(out, parse_output_format(a.format));
    return kSuccess;
}

// --------------------------------------------------------------------- il --

struct IlArgs : Common {
    std::vector<double> z_list;
    std::string rho_grid;
    std::optional<double> p0;
    std::optional<double> p1;
    bool simulate = false;
    double x0 = 1.0;
};

int cmd_il(const IlArgs& a, std::ostream& out) {
    std::vector<double> rhos;
    if (!a.rho_grid.empty()) {
        rhos = parse_grid(a.rho_grid);
    } else if (a.p0 && a.p1) {
        rhos = {OraclePrice(*a.p0).value() / OraclePrice(*a.p1).value()};
    } else {
        throw UsageError("il needs --rho-grid or both --p0 and --p1");
    }
    if (a.simulate && std::find(a.z_list.begin(), a.z_list.end(), 1.0) != a.z_list.end()) {
        throw UnsupportedError("--simulate is unsupported for z = 1: the pool cannot rebalance away from the oracle price");
    }

    std::vector<std::string> cols{"z", "rho", "il_paper", "il_relative"};
    if (a.simulate) {
        cols.insert(cols.end(), {"il_paper_simulated", "il_relative_simulated"});
    }
    Table t(cols);
    for (double zv : a.z_list) {
        const MixParameter z(zv);
        for (double rho : rhos) {
            const auto cf = analytics::il_closed_form(z, rho);
            std::vector<Cell> row{zv, rho, cf.il_paper, cf.il_relative};
            if (a.simulate) {
                // Any (p0, p1) with the same ratio gives the same per-unit IL.
                const double p0 = a.p0.value_or(rho);
                const double p1 = a.p0 ? p0 / rho : 1.0;
                const auto sim = analytics::il_simulated(a.x0, OraclePrice(p0), OraclePrice(p1), z);
                row.insert(row.end(), {sim.il_paper, sim.il_relative});
            }
            t.add_row(std::move(row));
        }
    }
    t.write(out, parse_output_format(a.format));
    return kSuccess;
}

// --------------------------------------------------------------- slippage --

struct SlippageArgs : Common {
    std::vector<double> z_list;
    std::string dx_grid;
    bool normalized = false;
    std::optional<double> x, y, p;
};

int cmd_slippage(const SlippageArgs& a, std::ostream& out) {
    const bool user_pool = a.x || a.y || a.p;
    if (user_pool && a.normalized) {
        throw UsageError("--normalized cannot be combined with --x/--y/--p");
    }
    if (user_pool && !(a.x && a.y && a.p)) {
        throw UsageError("a user pool needs all of --x, --y and --p");
    }
    const double x = a.x.value_or(1.0), y = a.y.value_or(1.0), p = a.p.value_or(1.0);
    const auto grid = parse_grid(a.dx_grid);

    Table t({"z", "dx", "taylor", "exact"});
    for (double zv : a.z_list) {
        const PoolState pool = PoolState::anchored(x, y, OraclePrice(p), MixParameter(zv));
        for (double dx : grid) {
            try {
                const auto est = analytics::estimate_slippage(pool, dx);
                t.add_row({zv, dx, est.taylor_second_derivative_form, est.exact});
            } catch (const InsolvencyError&) {
                t.add_row({zv, dx, Cell{}, Cell{}});
            }
        }
    }
    t.write(out, parse_output_format(a.format));
    return kSuccess;
}

// --------------------------------------------------------------- simulate --

struct SimulateArgs : Common {
    std::string config;
    std::string out_dir;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const auto format = parse_output_format(a.format);
    const sim::ScenarioConfig cfg = sim::load_scenario_file(a.config);
    const auto runs = sim::run_scenario(cfg);

    std::filesystem::create_directories(a.out_dir);
    const char* ext = format == OutputFormat::Json ? ".json" : format == OutputFormat::Table ? ".txt" : ".csv";
    out << "final il_relative:";
    for (const auto& run : runs) {
        const auto file = std::filesystem::path(a.out_dir) / ("metrics_z" + z_label(run.z) + ext);
        std::ofstream f(file, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + file.string());
        }
        sim::metrics_table(run).write(f, format);
        out << " z=" << z_label(run.z) << ' ' << format_number(run.steps.back().il_relative);
    }
    out << '\n';
    return kSuccess;
}

// ------------------------------------------------------------------- path --

struct PathArgs {
    std::string kind = "gbm";
    double p0 = 1.0;
    double mu = 0.0;
    double sigma = 0.0;
    std::int64_t steps = 1;
    std::uint64_t seed = 0;
    std::string out_file;
};

int cmd_path(const PathArgs& a, std::ostream& out) {
    const oracle::PricePath path =
        a.kind == "constant" ? oracle::constant_path(a.p0, a.steps)
                             : oracle::gbm_path({a.p0, a.mu, a.sigma, a.steps, a.seed});
    if (a.out_file.empty()) {
        oracle::write_price_csv(out, path);
    } else {
        std::ofstream f(a.out_file, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + a.out_file);
        }
        oracle::write_price_csv(f, path);
    }
    return kSuccess;
}

} // namespace

std::vector<double> parse_grid(const std::string& spec) {
    const auto first = spec.find(':');
    const auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
    if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos) {
        throw UsageError("grid '" + spec + "' must have the form start:stop:count");
    }
    const double start = parse_double(std::string_view(spec).substr(0, first), "grid start");
    const double stop = parse_double(std::string_view(spec).substr(first + 1, second - first - 1), "grid stop");
    const std::string count_s = spec.substr(second + 1);
    long count = 0;
    const auto [ptr, ec] = std::from_chars(count_s.data(), count_s.data() + count_s.size(), count);
    if (ec != std::errc() || ptr != count_s.data() + count_s.size() || count < 1) {
        throw UsageError("grid count '" + count_s + "' must be a positive integer");
    }
    if (!std::isfinite(start) || !std::isfinite(stop)) {
        throw UsageError("grid bounds must be finite");
    }
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        g.push_back(start);
        return g;
    }
    for (long i = 0; i < count; ++i) {
        g.push_back(i == count - 1 ? stop : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return g;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Oracle-blended AMM analytics and simulation", "qubitswap"};
    app.require_subcommand(1);

    std::function<int()> action;

    CurveArgs curve;
    auto* c = app.add_subcommand("curve", "Sample the reserve curve y(x) for one or more z");
    c->add_option("--z", curve.z, "Mix parameter(s), comma separated")->required()->delimiter(',');
    auto* k_opt = c->add_option("--k", curve.k, "Curve constant");
    c->add_option("--p", curve.p, "Oracle price paired with --k")->capture_default_str()->needs(k_opt);
    auto* anchor_opt = c->add_option("--anchor", curve.anchor, "Anchor point x,y,p shared by every curve")
                           ->delimiter(',')
                           ->expected(3);
    k_opt->excludes(anchor_opt);
    c->add_option("--x-grid", curve.grid, "start:stop:count")->required();
    add_format(c, curve);
    c->callback([&] {
        if (!curve.k && curve.anchor.empty()) {
            throw CLI::RequiredError("curve needs --k or --anchor");
        }
        action = [&] { return cmd_curve(curve, out); };
    });

    SwapArgs swap;
    auto* s = app.add_subcommand("swap", "Execute a trade against a freshly anchored pool");
    s->add_option("--z", swap.z, "Mix parameter")->required();
    s->add_option("--x", swap.x, "X reserve")->required();
    s->add_option("--y", swap.y, "Y reserve")->required();
    s->add_option("--p", swap.p, "Oracle price (Y per X)")->required();
    s->add_option("--direction", swap.direction, "sell-x or sell-y")
        ->required()
        ->check(CLI::IsMember({"sell-x", "sell-y"}));
    auto* in_opt = s->add_option("--amount-in", swap.amount_in, "Exact input amount");
    auto* out_opt = s->add_option("--amount-out", swap.amount_out, "Exact output amount");
    in_opt->excludes(out_opt);
    add_format(s, swap);
    s->callback([&] {
        if (!swap.amount_in && !swap.amount_out) {
            throw CLI::RequiredError("swap needs --amount-in or --amount-out");
        }
        action = [&] { return cmd_swap(swap, out); };
    });

    IlArgs il;
    auto* i = app.add_subcommand("il", "Impermanent loss over z and price ratio");
    i->add_option("--z-list", il.z_list, "Mix parameters, comma separated")->required()->delimiter(',');
    auto* rho_opt = i->add_option("--rho-grid", il.rho_grid, "Price ratio p0/p1 grid start:stop:count");
    auto* p0_opt = i->add_option("--p0", il.p0, "Initial oracle price");
    auto* p1_opt = i->add_option("--p1", il.p1, "Final oracle price");
    rho_opt->excludes(p0_opt)->excludes(p1_opt);
    i->add_flag("--simulate", il.simulate, "Also run the rebalancing pipeline");
    i->add_option("--x0", il.x0, "Initial X reserve for --simulate")->capture_default_str();
    add_format(i, il);
    i->callback([&] { action = [&] { return cmd_il(il, out); }; });

    SlippageArgs slip;
    auto* sl = app.add_subcommand("slippage", "Taylor and exact slippage for selling X");
    sl->add_option("--z-list", slip.z_list, "Mix parameters, comma separated")->required()->delimiter(',');
    sl->add_option("--dx-grid", slip.dx_grid, "Trade size grid start:stop:count")->required();
    sl->add_flag("--normalized", slip.normalized, "Use the unit pool x = y = p = 1 (default)");
    sl->add_option("--x", slip.x, "X reserve of a user pool");
    sl->add_option("--y", slip.y, "Y reserve of a user pool");
    sl->add_option("--p", slip.p, "Oracle price of a user pool");
    add_format(sl, slip);
    sl->callback([&] { action = [&] { return cmd_slippage(slip, out); }; });

    SimulateArgs simu;
    auto* sm = app.add_subcommand("simulate", "Run a scenario config, one metrics file per z");
    sm->add_option("--config", simu.config, "Scenario JSON")->required();
    sm->add_option("--out", simu.out_dir, "Output directory")->required();
    add_format(sm, simu);
    sm->callback([&] { action = [&] { return cmd_simulate(simu, out); }; });

    PathArgs path;
    auto* pa = app.add_subcommand("path", "Emit an oracle price path as replay CSV");
    pa->add_option("--kind", path.kind, "constant or gbm")
        ->check(CLI::IsMember({"constant", "gbm"}))
        ->capture_default_str();
    pa->add_option("--p0", path.p0, "Initial price")->capture_default_str();
    pa->add_option("--mu", path.mu, "Drift per step")->capture_default_str();
    pa->add_option("--sigma", path.sigma, "Volatility per sqrt(step)")->capture_default_str();
    pa->add_option("--steps", path.steps, "Number of steps")->required();
    pa->add_option("--seed", path.seed, "PRNG seed")->capture_default_str();
    pa->add_option("--out", path.out_file, "Output file (default stdout)");
    pa->callback([&] { action = [&] { return cmd_path(path, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const InsolvencyError& e) {
        err << "error: " << e.what() << "\nmaximum feasible amount: " << format_number(e.limit()) << '\n';
        return kRuntimeError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

} // namespace qubitswap::cli
