#include <cmath>
#include <vector>

#include "catbond/model1.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace catbond;
using model1::Model1Spec;

namespace {

// growth-free exponential losses: the Panjer Psi is available and the
// Erlang series provides a second, series-based oracle
Model1Spec base_spec() {
    Model1Spec spec;
    spec.covering = model1::PoissonCovering{0.8};
    spec.loss.claim_rate = ArrivalIntensity::constant(1.0);
    spec.loss.growth = 0.0;
    spec.loss.severity = SeverityModel::exponential(1.0);
    spec.contract = CatBondContract{1.0, 0.3, 3.0, 3.0};
    spec.short_rate = 0.02;
    return spec;
}

}  // namespace

TEST_CASE("Panjer Psi provider matches the Erlang series") {
    const auto spec = base_spec();
    const auto psi = model1::make_panjer_psi(spec.loss, 3.0, 3.0 / 64.0);
    CHECK(psi(0.0) == 1.0);
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
        CHECK(psi(t) ==
              doctest::Approx(testing::compound_poisson_exponential_cdf(t, 1.0, 3.0)).epsilon(2e-3));
    }
}

TEST_CASE("Azema supermartingale") {
    const auto spec = base_spec();
    const auto psi = model1::make_panjer_psi(spec.loss, 3.0, 3.0 / 64.0);

    SUBCASE("one before the first covering time") {
        const std::vector<double> thetas{1.0, 2.0};
        CHECK(model1::azema_z(thetas, psi, 0.5) == 1.0);
    }
    SUBCASE("telescopes to Psi at the last covering time") {
        const std::vector<double> thetas{1.0, 2.0};
        CHECK(model1::azema_z(thetas, psi, 2.5) == doctest::Approx(psi(2.0)).epsilon(1e-12));
        const std::vector<double> more{0.25, 0.75, 1.25, 2.75};
        CHECK(model1::azema_z(more, psi, 3.0) == doctest::Approx(psi(2.75)).epsilon(1e-12));
    }
    SUBCASE("certainty when the threshold is unreachable") {
        const model1::PsiFn one = [](double) { return 1.0; };
        const std::vector<double> thetas{0.5, 1.5, 2.5};
        CHECK(model1::azema_z(thetas, one, 3.0) == 1.0);
    }
    SUBCASE("non-increasing along every covering path") {
        for (std::size_t p = 0; p < 100; ++p) {
            auto rng = substream(101, stream::arrivals, p);
            const auto thetas =
                simulate_arrival_times(ArrivalIntensity::constant(0.8), 3.0, rng);
            double prev = 1.0;
            for (int k = 0; k <= 30; ++k) {
                const double z = model1::azema_z(thetas, psi, 0.1 * k);
                CHECK(z <= prev + 1e-14);
                prev = z;
            }
        }
    }
    SUBCASE("increasing Psi rejected") {
        const model1::PsiFn bad = [](double t) { return t == 0.0 ? 0.5 : 0.9; };
        const std::vector<double> thetas{1.0};
        CHECK_THROWS_AS((void)model1::azema_z(thetas, bad, 2.0), std::invalid_argument);
    }
}

TEST_CASE("trigger simulation") {
    SUBCASE("negligible losses never trigger") {
        auto spec = base_spec();
        spec.loss.severity = SeverityModel::exponential(1e9);  // mean 1e-9
        for (std::size_t p = 0; p < 200; ++p) {
            auto rng = substream(102, stream::arrivals, p);
            CHECK(model1::simulate_trigger(spec, 3.0, rng) == model1::beyond_horizon);
        }
    }
    SUBCASE("a first loss above the threshold triggers at the first covering time") {
        auto spec = base_spec();
        spec.covering = model1::DeterministicCovering{{1.0, 2.0, 3.0}};
        spec.loss.claim_rate = ArrivalIntensity::constant(8.0);
        spec.loss.severity = SeverityModel::exponential(1e-6);  // mean 1e6 >> D
        std::size_t triggered_at_first = 0, with_early_event = 0;
        for (std::size_t p = 0; p < 200; ++p) {
            auto rng = substream(103, stream::arrivals, p);
            const double tau = model1::simulate_trigger(spec, 3.0, rng);
            auto rng_replay = substream(103, stream::arrivals, p);
            const LossPath path = simulate_loss_path(spec.loss, 3.0, rng_replay);
            if (!path.events().empty() && path.events()[0].time <= 1.0) {
                ++with_early_event;
                if (tau == 1.0) ++triggered_at_first;
            }
        }
        CHECK(with_early_event > 100);
        CHECK(triggered_at_first == with_early_event);
    }
    SUBCASE("deterministic covering: P(tau > T) matches Psi at the last time") {
        auto spec = base_spec();
        spec.covering = model1::DeterministicCovering{{1.0, 2.0, 3.0}};
        const auto psi = model1::make_panjer_psi(spec.loss, 3.0, 3.0 / 64.0);
        std::vector<double> alive(40000);
        for (std::size_t p = 0; p < alive.size(); ++p) {
            auto rng = substream(104, stream::arrivals, p);
            alive[p] = model1::simulate_trigger(spec, 3.0, rng) > 3.0 ? 1.0 : 0.0;
        }
        const Estimate est = mean_and_se(alive);
        CHECK(std::abs(est.value - psi(3.0)) <= 3.0 * est.se);
    }
    SUBCASE("immersion spot check: survival from triggers equals E[Z_u]") {
        const auto spec = base_spec();
        const auto psi = model1::make_panjer_psi(spec.loss, 3.0, 3.0 / 64.0);
        const double u = 2.0;
        std::vector<double> alive(30000), z(30000);
        for (std::size_t p = 0; p < alive.size(); ++p) {
            auto rng = substream(105, stream::arrivals, p);
            alive[p] = model1::simulate_trigger(spec, u, rng) > u ? 1.0 : 0.0;
            auto rng2 = substream(106, stream::arrivals, p);
            const auto thetas = simulate_arrival_times(ArrivalIntensity::constant(0.8), u, rng2);
            z[p] = model1::azema_z(thetas, psi, u);
        }
        const Estimate a = mean_and_se(alive);
        const Estimate b = mean_and_se(z);
        CHECK(std::abs(a.value - b.value) <= 3.0 * std::hypot(a.se, b.se));
    }
}

TEST_CASE("inaccessible-case price") {
    const auto spec = base_spec();
    const auto psi = model1::make_panjer_psi(spec.loss, 3.0, 3.0 / 64.0);
    const double riskless = std::exp(-spec.short_rate * spec.contract.maturity);

    SUBCASE("no covering times leaves the riskless bond") {
        auto quiet = spec;
        quiet.covering = model1::PoissonCovering{0.0};
        const Estimate est = model1::price_inaccessible(quiet, psi, 1000, 111);
        CHECK(est.value == doctest::Approx(riskless).epsilon(1e-12));
        CHECK(est.se == doctest::Approx(0.0));
    }
    SUBCASE("unreachable threshold leaves the riskless bond") {
        const model1::PsiFn one = [](double) { return 1.0; };
        const Estimate est = model1::price_inaccessible(spec, one, 1000, 112);
        CHECK(est.value == doctest::Approx(riskless).epsilon(1e-12));
    }
    SUBCASE("agrees with the payoff oracle, recovery leg included") {
        const Estimate a = model1::price_inaccessible(spec, psi, 40000, 113);
        const Estimate b = model1::mc_price(spec, 40000, 114);
        CHECK(std::abs(a.value - b.value) <= 3.0 * std::hypot(a.se, b.se));
        // both lie between the recovery floor and the riskless bond
        for (const Estimate& e : {a, b}) {
            CHECK(e.value >= spec.contract.recovery * riskless - 3.0 * e.se);
            CHECK(e.value <= riskless + 3.0 * e.se);
        }
    }
    SUBCASE("first-event truncation reproduces the single-event route") {
        const Estimate a = model1::price_inaccessible(spec, psi, 30000, 115, 1);
        const Estimate b = model1::price_single_event(spec, psi, 30000, 116);
        CHECK(std::abs(a.value - b.value) <= 3.0 * std::hypot(a.se, b.se));
    }
    SUBCASE("rejects deterministic covering times") {
        auto det = spec;
        det.covering = model1::DeterministicCovering{{1.0}};
        CHECK_THROWS_AS((void)model1::price_inaccessible(det, psi, 1000, 117),
                        std::invalid_argument);
    }
}

TEST_CASE("predictable-case price") {
    auto spec = base_spec();
    spec.covering = model1::DeterministicCovering{{1.0, 2.0, 3.0}};
    spec.short_rate = 0.0;
    const auto psi = model1::make_panjer_psi(spec.loss, 3.0, 3.0 / 64.0);

    SUBCASE("closed form is the scaled Psi at the last covering time") {
        const Estimate est = model1::price_predictable(spec, psi);
        CHECK(est.value == doctest::Approx((1.0 - 0.3) * psi(3.0)).epsilon(1e-12));
    }
    SUBCASE("no covering time before maturity") {
        auto late = spec;
        late.covering = model1::DeterministicCovering{{5.0}};
        CHECK(model1::price_predictable(late, psi).value ==
              doctest::Approx(1.0 - 0.3).epsilon(1e-14));
    }
    SUBCASE("nonzero rate is rejected and points to the oracle") {
        auto with_rate = spec;
        with_rate.short_rate = 0.01;
        CHECK_THROWS_WITH_AS((void)model1::price_predictable(with_rate, psi),
                             doctest::Contains("mc_price"), std::invalid_argument);
    }
    SUBCASE("agrees with the payoff oracle when recovery is zero") {
        auto zero_rec = spec;
        zero_rec.contract.recovery = 0.0;
        const Estimate a = model1::price_predictable(zero_rec, psi);
        const Estimate b = model1::mc_price(zero_rec, 40000, 121);
        CHECK(std::abs(a.value - b.value) <= 3.0 * b.se);
        const Estimate c = model1::price_predictable_mc_psi(zero_rec, 40000, 122);
        CHECK(std::abs(c.value - b.value) <= 3.0 * std::hypot(c.se, b.se));
    }
}

TEST_CASE("payoff oracle degenerate case") {
    auto spec = base_spec();
    spec.contract.recovery = 0.0;
    spec.loss.claim_rate = ArrivalIntensity::constant(0.0);  // no losses, never triggers
    const Estimate est = model1::mc_price(spec, 1000, 123);
    CHECK(est.value == doctest::Approx(std::exp(-0.02 * 3.0)).epsilon(1e-14));
    CHECK(est.se == doctest::Approx(0.0));
}
