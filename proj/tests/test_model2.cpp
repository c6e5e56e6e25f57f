#include <cmath>
#include <vector>

#include "catbond/mc.hpp"
#include "catbond/model2.hpp"
#include "doctest.h"

using namespace catbond;
using model2::Model2State;

namespace {

Model2State paper_state() {
    Model2State state;
    state.loss.claim_rate = ArrivalIntensity::constant(0.5);
    state.loss.growth = 0.8;
    state.loss.severity = SeverityModel::lognormal(6.387, 0.153);
    state.contract = CatBondContract{1.0, 0.0, 10000.0, 3.0};
    state.rates = CirParams{0.0204, 0.0884, 0.0204, 0.0477};
    return state;
}

Model2State exp_state() {
    Model2State state = paper_state();
    state.loss.claim_rate = ArrivalIntensity::constant(1.0);
    state.loss.growth = 0.5;
    state.loss.severity = SeverityModel::exponential(1.0);
    state.contract.threshold = 4.0;
    return state;
}

}  // namespace

TEST_CASE("pricing preconditions") {
    auto state = paper_state();
    state.contract.recovery = 0.25;
    CHECK_THROWS_AS(state.validate_for_pricing(), std::invalid_argument);
    state = paper_state();
    state.loss.severity = SeverityModel::pareto(1.8, 100.0);
    CHECK_THROWS_AS(state.validate_for_pricing(), std::invalid_argument);
    state.loss.severity = SeverityModel::pareto(2.5, 100.0);
    CHECK_NOTHROW(state.validate_for_pricing());
}

TEST_CASE("survival function") {
    const auto state = paper_state();
    CHECK(model2::survival(state, 0.0) == 1.0);

    auto quiet = state;
    quiet.loss.claim_rate = ArrivalIntensity::constant(0.0);
    for (double u : {0.5, 1.5, 3.0}) CHECK(model2::survival(quiet, u) == 1.0);

    SUBCASE("matches the empirical trigger law at the study parameters") {
        model2::McConfig mc;
        mc.n_paths = 100000;
        mc.seed = 81;
        const std::vector<double> grid{3.0};
        const auto curve = model2::mc_survival(state, grid, mc);
        CHECK(std::abs(model2::survival(state, 3.0) - curve.survival[0]) <= 3.0 * curve.se[0]);
    }
}

TEST_CASE("trigger simulation") {
    const auto state = exp_state();
    SUBCASE("huge exponential draw never crosses") {
        const LossPath path(3.0, {{1.0, 2.0}, {2.0, 1.0}});
        CHECK(model2::trigger_time(state, path, 1e9) == model2::beyond_horizon);
    }
    SUBCASE("growth-free crossings happen only at event times") {
        auto cpp = state;
        cpp.loss.growth = 0.0;
        for (std::size_t p = 0; p < 2000; ++p) {
            auto loss_rng = substream(82, stream::loss, p);
            const LossPath path = simulate_loss_path(cpp.loss, 3.0, loss_rng);
            auto trig_rng = substream(82, stream::trigger, p);
            const double tau = model2::simulate_trigger(cpp, path, trig_rng);
            if (tau == model2::beyond_horizon) continue;
            bool at_event = false;
            for (const auto& ev : path.events()) at_event |= (ev.time == tau);
            CHECK(at_event);
        }
    }
    SUBCASE("between-event crossings are exact for growing losses") {
        // single shot 2 at t=1 grows as 2 e^{0.5 (t-1)}; crossing of level solves in closed form
        const LossPath path(3.0, {{1.0, 2.0}});
        const double theta_draw = 0.75;  // level = 3
        const double tau = model2::trigger_time(state, path, theta_draw);
        CHECK(tau == doctest::Approx(1.0 + std::log(1.5) / 0.5).epsilon(1e-13));
        CHECK(2.0 * std::exp(0.5 * (tau - 1.0)) == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("empirical survival matches c(u) on a grid") {
        model2::McConfig mc;
        mc.n_paths = 50000;
        mc.seed = 83;
        std::vector<double> grid;
        for (int k = 1; k <= 6; ++k) grid.push_back(0.5 * k);
        const auto curve = model2::mc_survival(state, grid, mc);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(model2::survival(state, grid[i]) - curve.survival[i]) <=
                  3.0 * curve.se[i]);
        }
    }
}

TEST_CASE("trigger intensity") {
    const auto state = exp_state();
    SUBCASE("exact form for exponential severities") {
        const double d = state.contract.threshold;
        const double expected = 1.0 * (1.0 / d) / (1.0 + 1.0 / d);
        CHECK(model2::intensity_rate(state, 0.7) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("vanishes as the threshold grows") {
        auto wide = paper_state();
        wide.contract.threshold = 1e300;
        CHECK(model2::intensity_rate(wide, 1.0) <= 1e-10);
    }
    SUBCASE("Lambert-W and quadrature routes agree within 1% at the study parameters") {
        const auto state2 = paper_state();
        const double lw = model2::intensity_rate(state2, 0.0);
        const double quad =
            0.5 * (1.0 - state2.loss.severity.laplace_quadrature(1.0 / state2.contract.threshold));
        CHECK(lw == doctest::Approx(quad).epsilon(0.01));
    }
}

TEST_CASE("dual predictable projection") {
    const auto state = exp_state();
    SUBCASE("density before the first event is the bare intensity") {
        CHECK(model2::dual_projection_rate(state, 0.3, 1.0) ==
              doctest::Approx(model2::intensity_rate(state, 0.3)).epsilon(1e-14));
        CHECK(model2::dual_projection_rate(state, 0.3, 1.0) / 1.0 ==
              doctest::Approx(model2::intensity_rate(state, 0.3)).epsilon(1e-14));
    }
    SUBCASE("vanishes as the threshold grows") {
        auto wide = state;
        wide.contract.threshold = 1e300;
        CHECK(model2::dual_projection_rate(wide, 1.0, 0.5) <= 1e-10);
    }
    SUBCASE("expectation identity E[A_T] = 1 - c(T) in the compound-Poisson case") {
        // growth = 0: the projection formula is the full compensator, and
        // Z is piecewise constant so the path integral is an exact sum
        auto cpp = exp_state();
        cpp.loss.growth = 0.0;
        const double maturity = cpp.contract.maturity;
        const double d = cpp.contract.threshold;
        const double rate = model2::intensity_rate(cpp, 0.0);
        std::vector<double> a_T(50000);
        for (std::size_t p = 0; p < a_T.size(); ++p) {
            auto rng = substream(84, stream::loss, p);
            const LossPath path = simulate_loss_path(cpp.loss, maturity, rng);
            double acc = 0.0, level = 0.0, last = 0.0;
            for (const auto& ev : path.events()) {
                acc += std::exp(-level / d) * (ev.time - last);
                level += ev.amount;
                last = ev.time;
            }
            acc += std::exp(-level / d) * (maturity - last);
            a_T[p] = rate * acc;
        }
        const Estimate est = mean_and_se(a_T);
        CHECK(std::abs(est.value - (1.0 - model2::survival(cpp, maturity))) <= 3.0 * est.se);
    }
}

TEST_CASE("closed-form price") {
    const auto state = paper_state();
    const double r0 = state.rates.initial_rate;
    SUBCASE("worthless after the trigger, full principal at maturity otherwise") {
        CHECK(model2::price(state, 3.0, 123.0, r0, true) == 1.0);
        CHECK(model2::price(state, 1.0, 123.0, r0, false) == 0.0);
    }
    SUBCASE("riskless limits") {
        auto wide = state;
        wide.contract.threshold = 1e300;
        const double q = bond_price(state.rates, r0, 0.5, 3.0);
        CHECK(model2::price(wide, 0.5, 700.0, r0, true) == doctest::Approx(q).epsilon(1e-9));

        auto quiet = state;
        quiet.loss.claim_rate = ArrivalIntensity::constant(0.0);
        CHECK(model2::price(quiet, 0.5, 0.0, r0, true) == doctest::Approx(q).epsilon(1e-12));
    }
    SUBCASE("t = 0 price factorizes into survival times discount") {
        const double expected =
            model2::survival(state, 3.0) * bond_price(state.rates, r0, 0.0, 3.0);
        CHECK(model2::pre_trigger_price(state, 0.0, 0.0, r0) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
    SUBCASE("bounded by the discount bond") {
        const LossPath path(3.0, {{0.7, 9000.0}, {1.9, 4000.0}});
        for (int k = 0; k <= 30; ++k) {
            const double t = 3.0 * k / 30.0;
            const double level = loss_at(path, state.loss.growth, t);
            const double v = model2::pre_trigger_price(state, t, level, r0);
            CHECK(v >= 0.0);
            CHECK(v <= bond_price(state.rates, r0, t, 3.0) + 1e-14);
        }
    }
    SUBCASE("non-decreasing in the threshold (figure 2 battery)") {
        const LossPath path(3.0, {{1.104, 601.8668}, {1.971, 582.0399}});
        double prev = 0.0;
        for (double d : {5000.0, 9000.0, 15000.0, 20000.0}) {
            auto s = state;
            s.contract.threshold = d;
            const double v =
                model2::pre_trigger_price(s, 2.0, loss_at(path, s.loss.growth, 2.0), r0);
            CHECK(v >= prev);
            prev = v;
        }
    }
    SUBCASE("non-increasing in maturity") {
        double prev = 2.0;
        for (int k = 1; k <= 10; ++k) {
            auto s = state;
            s.contract.maturity = 0.5 * k;
            const double v = model2::price(s, 0.0, 0.0, r0, true);
            CHECK(v <= prev);
            prev = v;
        }
    }
    SUBCASE("increasing between events when the discount leg is frozen") {
        const LossPath path(3.0, {{0.5, 8000.0}});
        double prev = 0.0;
        for (int k = 0; k <= 40; ++k) {
            const double t = 0.6 + (2.9 - 0.6) * k / 40.0;
            const double level = loss_at(path, state.loss.growth, t);
            const double stripped = model2::pre_trigger_price(state, t, level, r0) /
                                    bond_price(state.rates, r0, t, 3.0);
            CHECK(stripped >= prev);
            prev = stripped;
        }
    }
    SUBCASE("survival consistency: E[Z_T] equals c(T)") {
        std::vector<double> z(50000);
        for (std::size_t p = 0; p < z.size(); ++p) {
            auto rng = substream(85, stream::loss, p);
            const LossPath path = simulate_loss_path(state.loss, 3.0, rng);
            z[p] = std::exp(-loss_at(path, state.loss.growth, 3.0) / state.contract.threshold);
        }
        const Estimate est = mean_and_se(z);
        CHECK(std::abs(est.value - model2::survival(state, 3.0)) <= 3.0 * est.se);
    }
}

TEST_CASE("price jumps at catastrophe times") {
    const auto state = paper_state();
    const double r0 = state.rates.initial_rate;
    SUBCASE("no jump without growth") {
        auto cpp = state;
        cpp.loss.growth = 0.0;
        CHECK(model2::jump_size(cpp, 1.2, 700.0, 0.9) == 0.0);
    }
    SUBCASE("reported event ratios") {
        // first event: -19.309152% of the value before the jump; second: -7.092837%
        const double rel1 = model2::jump_size(state, 1.104, 601.8668, 1.0);
        CHECK(std::abs(rel1 - (-0.19309152)) < 0.005);
        const double rel2 = model2::jump_size(state, 1.971, 582.0399, 1.0);
        CHECK(std::abs(rel2 - (-0.07092837)) < 0.005);
    }
    SUBCASE("jump formula matches the pre-trigger price difference exactly") {
        for (std::size_t p = 0; p < 200; ++p) {
            auto rng = substream(86, stream::loss, p);
            const LossPath path = simulate_loss_path(state.loss, 3.0, rng);
            for (const auto& ev : path.events()) {
                const double after_level = loss_at(path, state.loss.growth, ev.time);
                const double before =
                    model2::pre_trigger_price(state, ev.time, after_level - ev.amount, r0);
                const double after =
                    model2::pre_trigger_price(state, ev.time, after_level, r0);
                const double predicted = model2::jump_size(state, ev.time, ev.amount, before);
                CHECK(std::abs((after - before) - predicted) <= 1e-12 * before);
                CHECK(predicted <= 0.0);
            }
        }
    }
    SUBCASE("growth-free pre-trigger price is continuous across events") {
        auto cpp = state;
        cpp.loss.growth = 0.0;
        double worst = 0.0;
        for (std::size_t p = 0; p < 1000; ++p) {
            auto rng = substream(87, stream::loss, p);
            const LossPath path = simulate_loss_path(cpp.loss, 3.0, rng);
            for (const auto& ev : path.events()) {
                const double level = loss_at(path, 0.0, ev.time);
                const double before = model2::pre_trigger_price(cpp, ev.time, level - ev.amount, r0);
                const double after = model2::pre_trigger_price(cpp, ev.time, level, r0);
                worst = std::max(worst, std::abs(after - before));
            }
        }
        CHECK(worst <= 1e-12);
    }
}
