#include "qubitswap/cli.hpp"

#include "cli_support.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace qubitswap;
using namespace qubitswap::test;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string config(const char* name) {
    return std::string(QUBITSWAP_CONFIG_DIR) + "/" + name;
}

} // namespace

TEST(ParseGrid, InclusiveLinspace) {
    EXPECT_EQ(cli::parse_grid("0.5:2:4"), (std::vector<double>{0.5, 1, 1.5, 2}));
    EXPECT_EQ(cli::parse_grid("1.1:1.1:1"), (std::vector<double>{1.1}));
    EXPECT_THROW(cli::parse_grid("1:2"), std::exception);
    EXPECT_THROW(cli::parse_grid("1:2:0"), std::exception);
    EXPECT_THROW(cli::parse_grid("a:2:3"), std::exception);
}

TEST(CliCurve, ConstantProductRows) {
    const auto r = run_cli({"curve", "--z", "0", "--k", "1", "--x-grid", "0.5:2:4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = parse_csv(r.out);
    EXPECT_EQ(csv.header, (std::vector<std::string>{"z", "x", "y"}));
    ASSERT_EQ(csv.rows.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(csv.num(i, "x") * csv.num(i, "y"), 1.0, 1e-15);
    }
}

TEST(CliCurve, AnchoredLineAndBlend) {
    const auto line = parse_csv(run_cli({"curve", "--z", "1", "--anchor", "1,1,1", "--x-grid", "0.5:1.5:3"}).out);
    ASSERT_EQ(line.rows.size(), 3u);
    EXPECT_NEAR(line.num(1, "y") - line.num(0, "y"), line.num(2, "y") - line.num(1, "y"), 1e-15);

    const auto blend = parse_csv(run_cli({"curve", "--z", "0.5", "--anchor", "1,1,1", "--x-grid", "1.1:1.1:1"}).out);
    ASSERT_EQ(blend.rows.size(), 1u);
    EXPECT_NEAR(blend.num(0, "y"), 0.9046167856607897539, 1e-14);
}

TEST(CliCurve, MarksInfeasiblePoints) {
    const auto r = run_cli({"curve", "--z", "1", "--anchor", "1,1,1", "--x-grid", "1:3:3"});
    ASSERT_EQ(r.code, 0);
    const auto csv = parse_csv(r.out);
    EXPECT_EQ(csv.rows[2][2], "infeasible");
}

TEST(CliCurve, UsageErrors) {
    EXPECT_EQ(run_cli({"curve", "--z", "0", "--x-grid", "0.5:2:4"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"curve", "--z", "0", "--k", "1", "--anchor", "1,1,1", "--x-grid", "1:2:2"}).code,
              cli::kUsageError);
    EXPECT_EQ(run_cli({"curve", "--z", "0", "--k", "1", "--x-grid", "1:2"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"curve", "--z", "2", "--k", "1", "--x-grid", "1:2:2"}).code, cli::kRuntimeError);
    EXPECT_EQ(run_cli({}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsageError);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kSuccess);
}

TEST(CliSwap, Examples) {
    const auto cp = parse_csv(
        run_cli({"swap", "--z", "0", "--x", "1", "--y", "1", "--p", "1", "--direction", "sell-x", "--amount-in", "1"}).out);
    EXPECT_EQ(cp.num(0, "amount_out"), 0.5);
    EXPECT_EQ(cp.rows[0][cp.col("direction")], "sell-x");

    const auto line = parse_csv(
        run_cli({"swap", "--z", "1", "--x", "1", "--y", "1", "--p", "1", "--direction", "sell-y", "--amount-in", "0.4"}).out);
    EXPECT_LE(line.num(0, "slippage_cost"), 1e-12);

    const auto blend = parse_csv(
        run_cli({"swap", "--z", "0.5", "--x", "1", "--y", "1", "--p", "1", "--direction", "sell-x", "--amount-in", "0.1"}).out);
    EXPECT_NEAR(blend.num(0, "amount_out"), 0.095383214339210246071, 1e-14);

    const auto out = parse_csv(
        run_cli({"swap", "--z", "0", "--x", "1", "--y", "1", "--p", "1", "--direction", "sell-x", "--amount-out", "0.5"}).out);
    EXPECT_NEAR(out.num(0, "amount_in"), 1.0, 1e-14);
}

TEST(CliSwap, InsolvencyReportsMaximum) {
    const auto r =
        run_cli({"swap", "--z", "1", "--x", "1", "--y", "1", "--p", "1", "--direction", "sell-x", "--amount-in", "2"});
    EXPECT_EQ(r.code, cli::kRuntimeError);
    EXPECT_NE(r.err.find("maximum feasible amount: 1"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"swap", "--z", "0", "--x", "1", "--y", "1", "--p", "1", "--direction", "sell-x"}).code,
              cli::kUsageError);
    EXPECT_EQ(run_cli({"swap", "--z", "0", "--x", "1", "--y", "1", "--p", "1", "--direction", "buy", "--amount-in", "1"})
                  .code,
              cli::kUsageError);
}

TEST(CliSwap, JsonOutput) {
    const auto r = run_cli({"swap", "--z", "0", "--x", "1", "--y", "1", "--p", "1", "--direction", "sell-x",
                            "--amount-in", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"amount_out\": 0.5"), std::string::npos) << r.out;
}

TEST(CliIl, ClosedFormAndSimulated) {
    const auto flat = parse_csv(run_cli({"il", "--z-list", "0,0.5,0.9", "--p0", "2", "--p1", "2"}).out);
    for (std::size_t i = 0; i < flat.rows.size(); ++i) {
        EXPECT_EQ(flat.num(i, "il_paper"), 0.0);
    }
    const auto r = run_cli({"il", "--z-list", "0", "--rho-grid", "4:4:1", "--simulate"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = parse_csv(r.out);
    EXPECT_EQ(csv.header, (std::vector<std::string>{"z", "rho", "il_paper", "il_relative", "il_paper_simulated",
                                                    "il_relative_simulated"}));
    EXPECT_EQ(csv.num(0, "il_paper"), 1.0);
    EXPECT_NEAR(csv.num(0, "il_paper_simulated"), 1.0, 1e-12);

    const auto p = parse_csv(run_cli({"il", "--z-list", "0.6", "--p0", "3", "--p1", "1.5", "--simulate"}).out);
    EXPECT_NEAR(p.num(0, "il_paper"), p.num(0, "il_paper_simulated"), 1e-12);
}

TEST(CliIl, MonotoneColumns) {
    const auto csv = parse_csv(run_cli({"il", "--z-list", "0,0.3,0.6,0.9", "--rho-grid", "0.25:4:6"}).out);
    ASSERT_EQ(csv.rows.size(), 24u);
    for (std::size_t r = 0; r < 6; ++r) {
        const double rho = csv.num(r, "rho");
        for (std::size_t zi = 1; zi < 4; ++zi) {
            const double prev = csv.num((zi - 1) * 6 + r, "il_paper");
            const double cur = csv.num(zi * 6 + r, "il_paper");
            if (rho > 1) {
                EXPECT_LT(cur, prev);
            } else if (rho < 1) {
                EXPECT_GT(cur, prev);
            }
        }
    }
}

TEST(CliIl, SimulateUnsupportedAtPureOracle) {
    const auto r = run_cli({"il", "--z-list", "0.5,1", "--rho-grid", "1:2:2", "--simulate"});
    EXPECT_EQ(r.code, cli::kRuntimeError);
    EXPECT_NE(r.err.find("unsupported"), std::string::npos);
    EXPECT_EQ(run_cli({"il", "--z-list", "0.5"}).code, cli::kUsageError);
}

TEST(CliSlippage, NormalizedCoefficients) {
    const auto r = run_cli({"slippage", "--z-list", "0.1,0.9,1", "--dx-grid", "0.01:0.01:1", "--normalized"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = parse_csv(r.out);
    EXPECT_EQ(csv.header, (std::vector<std::string>{"z", "dx", "taylor", "exact"}));
    EXPECT_NEAR(csv.num(0, "taylor") / 0.01, 0.9, 1e-12);
    EXPECT_NEAR(csv.num(1, "taylor") / 0.01, 0.1, 1e-12);
    EXPECT_EQ(csv.num(2, "taylor"), 0.0);
    EXPECT_LE(csv.num(2, "exact"), 1e-12);
}

TEST(CliSlippage, InfeasibleRowsAndUserPool) {
    const auto csv = parse_csv(run_cli({"slippage", "--z-list", "1", "--dx-grid", "0.5:1.5:3"}).out);
    EXPECT_EQ(csv.rows[1][2], "infeasible");
    EXPECT_EQ(csv.rows[2][3], "infeasible");
    EXPECT_EQ(run_cli({"slippage", "--z-list", "0.5", "--dx-grid", "0.1:0.1:1", "--x", "2"}).code, cli::kUsageError);
    const auto user =
        run_cli({"slippage", "--z-list", "0.5", "--dx-grid", "0.1:0.1:1", "--x", "2", "--y", "3", "--p", "1.5"});
    EXPECT_EQ(user.code, 0) << user.err;
}

TEST(CliSimulate, WritesOneFilePerZ) {
    TempDir dir;
    const auto r = run_cli({"simulate", "--config", config("constant_price.json"), "--out", dir.path().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("final il_relative:"), std::string::npos);
    for (const char* z : {"0", "0.3", "0.6", "0.9", "1"}) {
        const auto file = dir.path() / (std::string("metrics_z") + z + ".csv");
        ASSERT_TRUE(std::filesystem::exists(file)) << file;
        const auto csv = parse_csv(read_file(file));
        EXPECT_EQ(csv.header, (std::vector<std::string>{"step", "oracle_price", "spot_price", "x", "y", "pool_value",
                                                        "hold_value", "il_relative", "last_slippage_cost",
                                                        "cumulative_volume"}));
        ASSERT_EQ(csv.rows.size(), 50u);
        for (std::size_t i = 0; i < csv.rows.size(); ++i) {
            EXPECT_EQ(csv.num(i, "il_relative"), 0.0);
        }
    }
}

TEST(CliSimulate, SingleJumpHalvesX) {
    TempDir dir;
    ASSERT_EQ(run_cli({"simulate", "--config", config("single_jump.json"), "--out", dir.path().string()}).code, 0);
    const auto csv = parse_csv(read_file(dir.path() / "metrics_z0.csv"));
    EXPECT_EQ(csv.num(0, "x"), 0.5);
}

TEST(CliSimulate, ConfigErrors) {
    TempDir dir;
    const auto bad = dir.path() / "bad.json";
    std::ofstream(bad) << "{\"x0\": 1, \"surprise\": true}";
    const auto r = run_cli({"simulate", "--config", bad.string(), "--out", (dir.path() / "o").string()});
    EXPECT_EQ(r.code, cli::kRuntimeError);
    EXPECT_NE(r.err.find("surprise"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"simulate", "--config", (dir.path() / "missing.json").string(), "--out", dir.path().string()}).code,
              cli::kRuntimeError);
}

TEST(CliPath, ReplayRoundTrip) {
    TempDir dir;
    const auto file = dir.path() / "path.csv";
    ASSERT_EQ(run_cli({"path", "--kind", "gbm", "--sigma", "0.05", "--steps", "30", "--seed", "9", "--out", file.string()}).code,
              0);
    std::ofstream(dir.path() / "scenario.json")
        << R"({"x0": 1, "y0": 1, "p0": 1, "z_values": [0.5], "steps": 30, "price_path": {"kind": "replay", "file": "path.csv"}})";
    const auto out = dir.path() / "out";
    ASSERT_EQ(run_cli({"simulate", "--config", (dir.path() / "scenario.json").string(), "--out", out.string()}).code, 0);
    const auto gen = parse_csv(read_file(file));
    const auto metrics = parse_csv(read_file(out / "metrics_z0.5.csv"));
    ASSERT_EQ(metrics.rows.size(), 30u);
    for (std::size_t i = 0; i < 30; ++i) {
        EXPECT_EQ(gen.num(i, "price"), metrics.num(i, "oracle_price"));
    }
}
