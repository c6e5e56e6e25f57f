// catbond: reproduces the shot-noise CAT bond study from a scenario config.
// Commands: price-path, threshold-sweep, surface, validate, scenarios.
// Exit codes: 0 success, 2 config error, 3 validation failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "catbond/config.hpp"
#include "catbond/csv.hpp"
#include "catbond/svg.hpp"
#include "catbond/validate.hpp"

namespace fs = std::filesystem;
using namespace catbond;

namespace {

struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

fs::path prepare_output(const ScenarioConfig& config) {
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    write_file(dir / "config_echo.cfg", config.echo());
    return dir;
}

// Daily grid on [0, maturity] merged with the event times, so rows exist
// exactly at the jumps.
std::vector<double> price_grid(const ScenarioConfig& config, const LossPath& path) {
    std::set<double> times;
    const double maturity = config.contract_maturity;
    for (double t = 0.0; t < maturity; t += config.grid_step) times.insert(t);
    times.insert(maturity);
    for (const auto& ev : path.events()) times.insert(ev.time);
    return {times.begin(), times.end()};
}

struct SimulatedScenario {
    LossPath path;
    std::vector<double> grid;
    std::vector<double> rate;   // CIR path on grid
    double theta_draw;          // unit exponential for the trigger
};

SimulatedScenario simulate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
    SimulatedScenario sc;
    const auto state = config.model2_state();
    auto loss_rng = substream(seed, stream::loss, 0);
    sc.path = simulate_loss_path(state.loss, config.contract_maturity, loss_rng);
    sc.grid = price_grid(config, sc.path);
    auto rate_rng = substream(seed, stream::rate, 0);
    sc.rate = simulate_rate_path(state.rates, sc.grid, rate_rng);
    auto trig_rng = substream(seed, stream::trigger, 0);
    std::exponential_distribution<double> unit_exp(1.0);
    sc.theta_draw = unit_exp(trig_rng);
    return sc;
}

std::vector<PricePathPoint> price_table(const model2::Model2State& state,
                                        const SimulatedScenario& sc) {
    const double tau = model2::trigger_time(state, sc.path, sc.theta_draw);
    std::vector<PricePathPoint> rows;
    rows.reserve(sc.grid.size());
    for (std::size_t k = 0; k < sc.grid.size(); ++k) {
        const double t = sc.grid[k];
        const double level = loss_at(sc.path, state.loss.growth, t);
        const double pre = model2::pre_trigger_price(state, t, level, sc.rate[k]);
        rows.push_back({t, level, t < tau ? pre : 0.0, pre,
                        bond_price(state.rates, sc.rate[k], t, state.contract.maturity)});
    }
    return rows;
}

struct JumpReport {
    std::string summary;     // '#'-prefixed lines appended to the CSV
    double worst_rel_error;  // observed vs jump formula
    std::size_t jumps;
};

JumpReport jump_summary(const model2::Model2State& state, const SimulatedScenario& sc) {
    JumpReport report{"", 0.0, 0};
    std::ostringstream os;
    for (const auto& ev : sc.path.events()) {
        if (ev.time > state.contract.maturity) continue;
        const auto k = std::lower_bound(sc.grid.begin(), sc.grid.end(), ev.time) - sc.grid.begin();
        const double level_after = loss_at(sc.path, state.loss.growth, ev.time);
        const double before =
            model2::pre_trigger_price(state, ev.time, level_after - ev.amount, sc.rate[k]);
        const double after = model2::pre_trigger_price(state, ev.time, level_after, sc.rate[k]);
        const double predicted = model2::jump_size(state, ev.time, ev.amount, before);
        const double rel_err = std::abs((after - before) - predicted) / before;
        report.worst_rel_error = std::max(report.worst_rel_error, rel_err);
        ++report.jumps;
        os << "# jump theta=" << format_number(ev.time) << " y=" << format_number(ev.amount)
           << " rel_jump=" << format_number((after - before) / before)
           << " formula=" << format_number(predicted / before) << '\n';
    }
    if (report.jumps == 0) os << "# no jumps\n";
    report.summary = os.str();
    return report;
}

void check_jumps(const JumpReport& report) {
    if (report.worst_rel_error > 1e-12) {
        throw ValidationFailure("price jumps deviate from the jump formula by " +
                                format_number(report.worst_rel_error));
    }
}

void write_price_path_outputs(const ScenarioConfig& config, const fs::path& dir,
                              const std::string& stem, std::uint64_t seed) {
    const auto state = config.model2_state();
    const SimulatedScenario sc = simulate_scenario(config, seed);
    const auto rows = price_table(state, sc);
    const JumpReport jumps = jump_summary(state, sc);

    std::ostringstream os;
    os << "t,loss,price,jump_flag\n";
    std::set<double> event_times;
    for (const auto& ev : sc.path.events()) event_times.insert(ev.time);
    for (const auto& row : rows) {
        os << format_number(row.t) << ',' << format_number(row.loss) << ','
           << format_number(row.pre_trigger_price) << ',' << (event_times.count(row.t) ? 1 : 0)
           << '\n';
    }
    os << jumps.summary;
    write_file(dir / (stem + ".csv"), os.str());

    std::ostringstream detail;
    write_price_path_csv(detail, rows);
    write_file(dir / (stem + "_detail.csv"), detail.str());

    SvgSeries price_series{"pre-trigger price", {}, {}};
    SvgSeries loss_series{"loss / threshold", {}, {}};
    for (const auto& row : rows) {
        price_series.x.push_back(row.t);
        price_series.y.push_back(row.pre_trigger_price);
        loss_series.x.push_back(row.t);
        loss_series.y.push_back(row.loss / state.contract.threshold);
    }
    std::ostringstream svg;
    write_svg_chart(svg, "CAT bond price and aggregate losses", {price_series, loss_series});
    write_file(dir / (stem + ".svg"), svg.str());

    check_jumps(jumps);
}

int cmd_price_path(const ScenarioConfig& config) {
    const fs::path dir = prepare_output(config);
    write_price_path_outputs(config, dir, "price_path", config.mc_seed);
    std::cout << "wrote " << (dir / "price_path.csv").string() << '\n';
    return 0;
}

void write_threshold_sweep_outputs(const ScenarioConfig& config, const fs::path& dir,
                                   const std::string& stem, std::uint64_t seed) {
    auto state = config.model2_state();
    const SimulatedScenario sc = simulate_scenario(config, seed);

    std::vector<std::vector<PricePathPoint>> tables;
    for (double d : config.sweep_thresholds) {
        state.contract.threshold = d;
        tables.push_back(price_table(state, sc));
    }

    std::ostringstream os;
    os << "t,threshold,price,pre_trigger_price\n";
    for (std::size_t i = 0; i < tables.size(); ++i) {
        for (const auto& row : tables[i]) {
            os << format_number(row.t) << ',' << format_number(config.sweep_thresholds[i]) << ','
               << format_number(row.price) << ',' << format_number(row.pre_trigger_price) << '\n';
        }
    }
    write_file(dir / (stem + ".csv"), os.str());

    std::vector<SvgSeries> series;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        SvgSeries s{"D=" + format_number(config.sweep_thresholds[i]), {}, {}};
        for (const auto& row : tables[i]) {
            s.x.push_back(row.t);
            s.y.push_back(row.pre_trigger_price);
        }
        series.push_back(std::move(s));
    }
    std::ostringstream svg;
    write_svg_chart(svg, "CAT bond price by threshold", series);
    write_file(dir / (stem + ".svg"), svg.str());

    // price curves must be ordered pointwise by threshold
    std::vector<std::size_t> order(tables.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return config.sweep_thresholds[a] < config.sweep_thresholds[b];
    });
    for (std::size_t oi = 1; oi < order.size(); ++oi) {
        const auto& lo = tables[order[oi - 1]];
        const auto& hi = tables[order[oi]];
        for (std::size_t k = 0; k < lo.size(); ++k) {
            if (hi[k].pre_trigger_price < lo[k].pre_trigger_price * (1.0 - 1e-12) ||
                hi[k].price < lo[k].price * (1.0 - 1e-12)) {
                throw ValidationFailure("threshold sweep not monotone at t=" +
                                        format_number(lo[k].t));
            }
        }
    }
}

int cmd_threshold_sweep(const ScenarioConfig& config) {
    const fs::path dir = prepare_output(config);
    write_threshold_sweep_outputs(config, dir, "threshold_sweep", config.mc_seed);
    std::cout << "wrote " << (dir / "threshold_sweep.csv").string() << '\n';
    return 0;
}

int cmd_surface(const ScenarioConfig& config) {
    const fs::path dir = prepare_output(config);
    auto state = config.model2_state();
    const double r0 = state.rates.initial_rate;

    std::vector<std::vector<double>> v;
    for (double d : config.sweep_thresholds) {
        std::vector<double> row;
        for (double t_mat : config.sweep_maturities) {
            state.contract.threshold = d;
            state.contract.maturity = t_mat;
            row.push_back(model2::price(state, 0.0, 0.0, r0, true));
        }
        v.push_back(row);
    }

    std::ostringstream os;
    os << "maturity,threshold,price\n";
    for (std::size_t i = 0; i < config.sweep_thresholds.size(); ++i) {
        for (std::size_t j = 0; j < config.sweep_maturities.size(); ++j) {
            os << format_number(config.sweep_maturities[j]) << ','
               << format_number(config.sweep_thresholds[i]) << ',' << format_number(v[i][j])
               << '\n';
        }
    }
    write_file(dir / "surface.csv", os.str());
    std::cout << "wrote " << (dir / "surface.csv").string() << '\n';

    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v[i].size(); ++j) {
            if (j > 0 && config.sweep_maturities[j] > config.sweep_maturities[j - 1] &&
                v[i][j] > v[i][j - 1]) {
                throw ValidationFailure("surface not non-increasing in maturity");
            }
            if (i > 0 && config.sweep_thresholds[i] > config.sweep_thresholds[i - 1] &&
                v[i][j] < v[i - 1][j]) {
                throw ValidationFailure("surface not non-decreasing in threshold");
            }
        }
    }
    return 0;
}

int cmd_validate(const ScenarioConfig& config) {
    const fs::path dir = prepare_output(config);
    const auto checks = run_validation(config);
    write_file(dir / "validation.csv", checks_to_csv(checks));
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value_a=" << format_number(c.value_a)
                  << " value_b=" << format_number(c.value_b)
                  << " tolerance=" << format_number(c.tolerance) << '\n';
    }
    std::cout << "wrote " << (dir / "validation.csv").string() << '\n';
    if (!all_pass(checks)) throw ValidationFailure("validation checks failed");
    return 0;
}

int cmd_scenarios(const ScenarioConfig& config) {
    if (config.scenarios_count < 1) throw ConfigError("scenarios.count must be >= 1");
    const fs::path dir = prepare_output(config);
    for (std::uint64_t s = 0; s < config.scenarios_count; ++s) {
        const std::uint64_t seed = config.mc_seed + s;
        std::ostringstream stem;
        stem << "scenario_" << std::setfill('0') << std::setw(2) << s;
        write_price_path_outputs(config, dir, stem.str() + "_price_path", seed);
        write_threshold_sweep_outputs(config, dir, stem.str() + "_threshold_sweep", seed);

        // shot-noise vs compound Poisson on the same arrival/shot draws
        const auto state = config.model2_state();
        auto cpp_config = config;
        cpp_config.loss_alpha = 0.0;
        const auto cpp_state = cpp_config.model2_state();
        const SimulatedScenario sn = simulate_scenario(config, seed);
        const SimulatedScenario cpp = simulate_scenario(cpp_config, seed);
        const auto sn_rows = price_table(state, sn);
        const auto cpp_rows = price_table(cpp_state, cpp);
        std::ostringstream os;
        os << "t,loss_sn,price_sn,loss_cpp,price_cpp\n";
        for (std::size_t k = 0; k < sn_rows.size(); ++k) {
            os << format_number(sn_rows[k].t) << ',' << format_number(sn_rows[k].loss) << ','
               << format_number(sn_rows[k].pre_trigger_price) << ','
               << format_number(cpp_rows[k].loss) << ','
               << format_number(cpp_rows[k].pre_trigger_price) << '\n';
        }
        write_file(dir / (stem.str() + "_sn_vs_cpp.csv"), os.str());
    }
    std::cout << "wrote " << config.scenarios_count << " scenarios under " << dir.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-coupon CAT bond pricing under shot-noise aggregate losses"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool has_seed = false;

    for (const char* name :
         {"price-path", "threshold-sweep", "surface", "validate", "scenarios"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "scenario config file")->required();
        sub->add_option("--out", out_override, "output directory (overrides output.dir)");
        sub->add_option("--seed", seed_override, "seed (overrides mc.seed)")
            ->each([&](const std::string&) { has_seed = true; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig config = ScenarioConfig::parse_file(config_path);
        if (!out_override.empty()) config.output_dir = out_override;
        if (has_seed) config.mc_seed = seed_override;
        std::cout << "resolved config:\n" << config.echo();

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "price-path") return cmd_price_path(config);
        if (cmd == "threshold-sweep") return cmd_threshold_sweep(config);
        if (cmd == "surface") return cmd_surface(config);
        if (cmd == "validate") return cmd_validate(config);
        return cmd_scenarios(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationFailure& e) {
        std::cerr << "validation failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
