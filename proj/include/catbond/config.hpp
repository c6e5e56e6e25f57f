#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "catbond/mc.hpp"
#include "catbond/model1.hpp"
#include "catbond/model2.hpp"

namespace catbond {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat `key = value` scenario file ('#' comments). Unknown keys are
// rejected; echo() emits every resolved key in canonical order and parses
// back to an identical configuration.
struct ScenarioConfig {
    std::string model = "model2";  // "model1" | "model2"

    // loss block
    double loss_lambda = 0.5;
    std::vector<double> loss_lambda_times;  // optional piecewise-constant intensity
    std::vector<double> loss_lambda_rates;
    double loss_alpha = 0.8;

    // severity block
    std::string severity_type = "lognormal";
    double severity_rate = 1.0;
    double severity_mu = 6.387;
    double severity_sigma = 0.153;
    double severity_shape = 3.0;
    double severity_scale = 1.0;

    // contract block
    double contract_principal = 1.0;
    double contract_recovery = 0.0;
    double contract_threshold = 10000.0;
    double contract_maturity = 3.0;

    // rates block
    std::string rates_model = "cir";  // "cir" | "constant"
    double rates_r0 = 0.0204;
    double rates_gamma = 0.0884;
    double rates_theta = 0.0204;
    double rates_sigma = 0.0477;
    double rates_r = 0.02;  // constant-rate model (model 1)

    // mc block
    std::uint64_t mc_paths = 20000;
    int mc_steps_per_year = 256;
    std::uint64_t mc_seed = 42;
    bool mc_antithetic = false;

    // sweeps and output grids
    std::vector<double> sweep_thresholds = {5000.0, 9000.0, 15000.0, 20000.0};
    std::vector<double> sweep_maturities = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
    double grid_step = 1.0 / 365.0;

    std::uint64_t scenarios_count = 6;

    // model 1 block
    std::string model1_covering = "poisson";  // "poisson" | "deterministic"
    double model1_covering_lambda = 0.5;
    std::vector<double> model1_covering_times = {1.0, 2.0, 3.0};
    std::string model1_psi = "panjer";  // "panjer" | "mc"

    double validate_tolerance_scale = 1.0;

    std::string output_dir = "out";

    static ScenarioConfig parse(const std::string& text);
    static ScenarioConfig parse_file(const std::string& path);
    std::string echo() const;

    // typed views
    SeverityModel severity() const;
    ShotNoiseSpec shot_noise() const;
    CirParams cir() const;
    CatBondContract contract() const;
    model2::Model2State model2_state() const;
    model2::McConfig mc_config() const;
    model1::Model1Spec model1_spec() const;
};

}  // namespace catbond
