#include <cmath>
#include <vector>

#include "catbond/rates.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace catbond;

namespace {
// US treasury calibration used throughout the numerical study
const CirParams paper{0.0204, 0.0884, 0.0204, 0.0477};
}  // namespace

TEST_CASE("bond price basics") {
    CHECK(bond_price(paper, 0.03, 2.0, 2.0) == 1.0);
    CHECK_THROWS_AS((void)bond_price(paper, 0.02, 3.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS((void)bond_price(paper, -0.01, 0.0, 2.0), std::invalid_argument);

    SUBCASE("strictly decreasing in maturity and within (0, 1]") {
        double prev = 1.0;
        for (int k = 1; k <= 20; ++k) {
            const double q = bond_price(paper, paper.initial_rate, 0.0, 0.5 * k);
            CHECK(q < prev);
            CHECK(q > 0.0);
            prev = q;
        }
    }
    SUBCASE("decreasing in the current rate") {
        double prev = 2.0;
        for (double r : {0.0, 0.01, 0.02, 0.05, 0.1}) {
            const double q = bond_price(paper, r, 0.0, 3.0);
            CHECK(q < prev);
            CHECK(q <= 1.0);
            prev = q;
        }
    }
}

TEST_CASE("bond price collapses to the deterministic integral as sigma -> 0") {
    CirParams p = paper;
    p.volatility = 1e-6;
    p.initial_rate = 0.035;
    const double q = bond_price(p, p.initial_rate, 0.0, 3.0);
    const double det = testing::deterministic_cir_discount(p.initial_rate, p.mean_reversion,
                                                           p.long_run_mean, 3.0);
    CHECK(std::abs(q - det) < 1e-4);
}

TEST_CASE("exact transition sampling") {
    SUBCASE("trivial grid returns r0") {
        auto rng = substream(61, stream::rate, 0);
        const std::vector<double> grid{0.0};
        const auto path = simulate_rate_path(paper, grid, rng);
        REQUIRE(path.size() == 1);
        CHECK(path[0] == paper.initial_rate);
    }
    SUBCASE("long-horizon mean reverts to theta") {
        std::vector<double> finals(10000);
        const std::vector<double> grid{0.0, 200.0};
        for (std::size_t i = 0; i < finals.size(); ++i) {
            auto rng = substream(62, stream::rate, i);
            finals[i] = simulate_rate_path(paper, grid, rng)[1];
        }
        const Estimate est = mean_and_se(finals);
        CHECK(std::abs(est.value - paper.long_run_mean) <= 3.0 * est.se);
    }
    SUBCASE("Feller condition holds on the study parameters and paths stay positive") {
        CHECK(2.0 * paper.mean_reversion * paper.long_run_mean >
              paper.volatility * paper.volatility);
        std::vector<double> grid;
        for (int k = 0; k <= 512; ++k) grid.push_back(k / 512.0);
        for (std::size_t p = 0; p < 200; ++p) {
            auto rng = substream(63, stream::rate, p);
            for (double r : simulate_rate_path(paper, grid, rng)) CHECK(r > 0.0);
        }
    }
}

TEST_CASE("discount oracle") {
    SUBCASE("vanishing rate discounts to 1") {
        const CirParams p{0.0, 1.0, 1e-12, 1e-6};
        const Estimate est = mc_discount(p, 2.0, 2000, 64, 71);
        CHECK(est.value == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("constant-rate degenerate limit") {
        const CirParams p{0.02, 50.0, 0.02, 1e-8};
        const Estimate est = mc_discount(p, 3.0, 2000, 64, 72);
        CHECK(std::abs(est.value - std::exp(-0.06)) < 1e-4);
    }
    SUBCASE("closed form vs oracle at the study parameters") {
        for (double maturity : {1.0, 2.0, 3.0}) {
            const Estimate est = mc_discount(paper, maturity, 20000, 128, 73);
            const double closed = bond_price(paper, paper.initial_rate, 0.0, maturity);
            CHECK(std::abs(closed - est.value) <= 3.0 * est.se);
        }
    }
}
