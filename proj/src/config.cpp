#include "catbond/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "catbond/csv.hpp"

namespace catbond {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': " + v);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const auto x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("invalid boolean for '" + key + "': " + v);
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    return out;
}

std::string list_to_string(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += ',';
        out += format_number(xs[i]);
    }
    return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& schema() {
    auto str = [](std::string ScenarioConfig::* f) {
        return Setter([f](ScenarioConfig& c, const std::string&, const std::string& v) { c.*f = v; });
    };
    auto num = [](double ScenarioConfig::* f) {
        return Setter([f](ScenarioConfig& c, const std::string& k, const std::string& v) {
            c.*f = parse_double(k, v);
        });
    };
    auto u64 = [](std::uint64_t ScenarioConfig::* f) {
        return Setter([f](ScenarioConfig& c, const std::string& k, const std::string& v) {
            c.*f = parse_u64(k, v);
        });
    };
    auto list = [](std::vector<double> ScenarioConfig::* f) {
        return Setter([f](ScenarioConfig& c, const std::string& k, const std::string& v) {
            c.*f = parse_list(k, v);
        });
    };
    static const std::map<std::string, Setter> s = {
        {"model", str(&ScenarioConfig::model)},
        {"loss.lambda", num(&ScenarioConfig::loss_lambda)},
        {"loss.lambda_times", list(&ScenarioConfig::loss_lambda_times)},
        {"loss.lambda_rates", list(&ScenarioConfig::loss_lambda_rates)},
        {"loss.alpha", num(&ScenarioConfig::loss_alpha)},
        {"severity.type", str(&ScenarioConfig::severity_type)},
        {"severity.rate", num(&ScenarioConfig::severity_rate)},
        {"severity.mu", num(&ScenarioConfig::severity_mu)},
        {"severity.sigma", num(&ScenarioConfig::severity_sigma)},
        {"severity.shape", num(&ScenarioConfig::severity_shape)},
        {"severity.scale", num(&ScenarioConfig::severity_scale)},
        {"contract.principal", num(&ScenarioConfig::contract_principal)},
        {"contract.recovery", num(&ScenarioConfig::contract_recovery)},
        {"contract.threshold", num(&ScenarioConfig::contract_threshold)},
        {"contract.maturity", num(&ScenarioConfig::contract_maturity)},
        {"rates.model", str(&ScenarioConfig::rates_model)},
        {"rates.r0", num(&ScenarioConfig::rates_r0)},
        {"rates.gamma", num(&ScenarioConfig::rates_gamma)},
        {"rates.theta", num(&ScenarioConfig::rates_theta)},
        {"rates.sigma", num(&ScenarioConfig::rates_sigma)},
        {"rates.r", num(&ScenarioConfig::rates_r)},
        {"mc.paths", u64(&ScenarioConfig::mc_paths)},
        {"mc.steps_per_year",
         Setter([](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.mc_steps_per_year = static_cast<int>(parse_u64(k, v));
         })},
        {"mc.seed", u64(&ScenarioConfig::mc_seed)},
        {"mc.antithetic",
         Setter([](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.mc_antithetic = parse_bool(k, v);
         })},
        {"sweep.thresholds", list(&ScenarioConfig::sweep_thresholds)},
        {"sweep.maturities", list(&ScenarioConfig::sweep_maturities)},
        {"grid.step", num(&ScenarioConfig::grid_step)},
        {"scenarios.count", u64(&ScenarioConfig::scenarios_count)},
        {"model1.covering", str(&ScenarioConfig::model1_covering)},
        {"model1.covering_lambda", num(&ScenarioConfig::model1_covering_lambda)},
        {"model1.covering_times", list(&ScenarioConfig::model1_covering_times)},
        {"model1.psi", str(&ScenarioConfig::model1_psi)},
        {"validate.tolerance_scale", num(&ScenarioConfig::validate_tolerance_scale)},
        {"output.dir", str(&ScenarioConfig::output_dir)},
    };
    return s;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(const std::string& text) {
    ScenarioConfig config;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = schema().find(key);
        if (it == schema().end()) throw ConfigError("unknown key '" + key + "'");
        it->second(config, key, value);
    }
    if (config.model != "model1" && config.model != "model2") {
        throw ConfigError("model must be 'model1' or 'model2'");
    }
    if (config.severity_type != "exponential" && config.severity_type != "lognormal" &&
        config.severity_type != "pareto") {
        throw ConfigError("severity.type must be exponential, lognormal or pareto");
    }
    if (config.rates_model != "cir" && config.rates_model != "constant") {
        throw ConfigError("rates.model must be 'cir' or 'constant'");
    }
    if (config.model1_covering != "poisson" && config.model1_covering != "deterministic") {
        throw ConfigError("model1.covering must be 'poisson' or 'deterministic'");
    }
    if (config.model1_psi != "panjer" && config.model1_psi != "mc") {
        throw ConfigError("model1.psi must be 'panjer' or 'mc'");
    }
    if (!config.loss_lambda_times.empty() &&
        config.loss_lambda_rates.size() != config.loss_lambda_times.size() + 1) {
        throw ConfigError("loss.lambda_rates must have one more entry than loss.lambda_times");
    }
    return config;
}

ScenarioConfig ScenarioConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ScenarioConfig::echo() const {
    std::ostringstream os;
    os << "model = " << model << '\n';
    os << "loss.lambda = " << format_number(loss_lambda) << '\n';
    os << "loss.lambda_times = " << list_to_string(loss_lambda_times) << '\n';
    os << "loss.lambda_rates = " << list_to_string(loss_lambda_rates) << '\n';
    os << "loss.alpha = " << format_number(loss_alpha) << '\n';
    os << "severity.type = " << severity_type << '\n';
    os << "severity.rate = " << format_number(severity_rate) << '\n';
    os << "severity.mu = " << format_number(severity_mu) << '\n';
    os << "severity.sigma = " << format_number(severity_sigma) << '\n';
    os << "severity.shape = " << format_number(severity_shape) << '\n';
    os << "severity.scale = " << format_number(severity_scale) << '\n';
    os << "contract.principal = " << format_number(contract_principal) << '\n';
    os << "contract.recovery = " << format_number(contract_recovery) << '\n';
    os << "contract.threshold = " << format_number(contract_threshold) << '\n';
    os << "contract.maturity = " << format_number(contract_maturity) << '\n';
    os << "rates.model = " << rates_model << '\n';
    os << "rates.r0 = " << format_number(rates_r0) << '\n';
    os << "rates.gamma = " << format_number(rates_gamma) << '\n';
    os << "rates.theta = " << format_number(rates_theta) << '\n';
    os << "rates.sigma = " << format_number(rates_sigma) << '\n';
    os << "rates.r = " << format_number(rates_r) << '\n';
    os << "mc.paths = " << mc_paths << '\n';
    os << "mc.steps_per_year = " << mc_steps_per_year << '\n';
    os << "mc.seed = " << mc_seed << '\n';
    os << "mc.antithetic = " << (mc_antithetic ? "true" : "false") << '\n';
    os << "sweep.thresholds = " << list_to_string(sweep_thresholds) << '\n';
    os << "sweep.maturities = " << list_to_string(sweep_maturities) << '\n';
    os << "grid.step = " << format_number(grid_step) << '\n';
    os << "scenarios.count = " << scenarios_count << '\n';
    os << "model1.covering = " << model1_covering << '\n';
    os << "model1.covering_lambda = " << format_number(model1_covering_lambda) << '\n';
    os << "model1.covering_times = " << list_to_string(model1_covering_times) << '\n';
    os << "model1.psi = " << model1_psi << '\n';
    os << "validate.tolerance_scale = " << format_number(validate_tolerance_scale) << '\n';
    os << "output.dir = " << output_dir << '\n';
    return os.str();
}

SeverityModel ScenarioConfig::severity() const {
    if (severity_type == "exponential") return SeverityModel::exponential(severity_rate);
    if (severity_type == "lognormal") return SeverityModel::lognormal(severity_mu, severity_sigma);
    return SeverityModel::pareto(severity_shape, severity_scale);
}

ShotNoiseSpec ScenarioConfig::shot_noise() const {
    ShotNoiseSpec spec;
    spec.claim_rate = loss_lambda_times.empty()
                          ? ArrivalIntensity::constant(loss_lambda)
                          : ArrivalIntensity::piecewise(loss_lambda_times, loss_lambda_rates);
    spec.growth = loss_alpha;
    spec.severity = severity();
    spec.validate();
    return spec;
}

CirParams ScenarioConfig::cir() const {
    CirParams p{rates_r0, rates_gamma, rates_theta, rates_sigma};
    p.validate();
    return p;
}

CatBondContract ScenarioConfig::contract() const {
    CatBondContract c{contract_principal, contract_recovery, contract_threshold, contract_maturity};
    c.validate();
    return c;
}

model2::Model2State ScenarioConfig::model2_state() const {
    if (rates_model != "cir") throw ConfigError("model2 requires rates.model = cir");
    return model2::Model2State{shot_noise(), contract(), cir()};
}

model2::McConfig ScenarioConfig::mc_config() const {
    model2::McConfig mc;
    mc.n_paths = mc_paths;
    mc.steps_per_year = mc_steps_per_year;
    mc.seed = mc_seed;
    mc.antithetic = mc_antithetic;
    mc.validate();
    return mc;
}

model1::Model1Spec ScenarioConfig::model1_spec() const {
    model1::Model1Spec spec;
    if (model1_covering == "poisson") {
        spec.covering = model1::PoissonCovering{model1_covering_lambda};
    } else {
        spec.covering = model1::DeterministicCovering{model1_covering_times};
    }
    spec.loss = shot_noise();
    spec.contract = contract();
    if (rates_model != "constant") throw ConfigError("model1 requires rates.model = constant");
    spec.short_rate = rates_r;
    spec.validate();
    return spec;
}

}  // namespace catbond
