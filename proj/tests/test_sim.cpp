#include "doctest.h"

#include <cmath>

#include "netopt/emp.hpp"
#include "netopt/errors.hpp"
#include "netopt/info.hpp"
#include "netopt/model.hpp"
#include "netopt/sim.hpp"

using namespace netopt;

TEST_SUITE("sim") {

TEST_CASE("white state: empirical state covariance matches the input variances") {
    // No edges at all: w(t) is exactly the white excitation.
    const NetworkModel model = build_general(2, {{1, 2, 0.0}});
    SignalConfig cfg;
    cfg.sigma2 = {{1, 2.0}, {2, 0.5}};
    cfg.lambda = {{1, 1.0}, {2, 1.0}};
    const long t = 100000;
    const SimTrace trace = simulate_information(model, Emp({1, 2}, {1, 2}), cfg, t, 99);
    CHECK(trace.samples == t);
    // Var of a mean of squares of N(0, s) draws is 2 s^2 / T.
    const double band = 4.0 / std::sqrt(static_cast<double>(t));
    CHECK(std::abs(trace.state_covariance(0, 0) - 2.0) <= band * 2.0 * std::sqrt(2.0));
    CHECK(std::abs(trace.state_covariance(1, 1) - 0.5) <= band * 0.5 * std::sqrt(2.0));
    CHECK(std::abs(trace.state_covariance(0, 1)) <= band * std::sqrt(2.0 * 0.5));
}

TEST_CASE("same seed gives a bit-identical trace") {
    const NetworkModel model = build_cycle(2, {0.5, 0.5});
    const SignalConfig cfg = SignalConfig::uniform(2, 1.0, 1.0);
    const Emp emp({1, 2}, {1});
    const SimTrace a = simulate_information(model, emp, cfg, 20000, 7);
    const SimTrace b = simulate_information(model, emp, cfg, 20000, 7);
    CHECK(a.samples == b.samples);
    CHECK(a.seed == b.seed);
    CHECK((a.empirical_info.array() == b.empirical_info.array()).all());
    CHECK((a.standard_error.array() == b.standard_error.array()).all());
    CHECK((a.state_covariance.array() == b.state_covariance.array()).all());

    const SimTrace c = simulate_information(model, emp, cfg, 20000, 8);
    CHECK_FALSE((a.empirical_info.array() == c.empirical_info.array()).all());
}

TEST_CASE("minimum sample count is enforced") {
    const NetworkModel model = build_cycle(2, {0.5, 0.5});
    const SignalConfig cfg = SignalConfig::uniform(2, 1.0, 1.0);
    CHECK_THROWS_AS(simulate_information(model, Emp({1, 2}, {1}), cfg, 999, 1),
                    ValidationError);
    CHECK_NOTHROW(simulate_information(model, Emp({1, 2}, {1}), cfg, 1000, 1));
}

TEST_CASE("empirical information agrees with the analytic value within 3 SE") {
    const NetworkModel model = build_cycle(2, {0.5, 0.5});
    const SignalConfig cfg = SignalConfig::uniform(2, 1.0, 1.0);
    const Emp emp({1, 2}, {1});
    const InfoResult analytic = information_matrix(model, emp, cfg);
    const SimTrace trace = simulate_information(model, emp, cfg, 1000000, 13);
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double diff = std::abs(trace.empirical_info(r, c) - analytic.info(r, c));
            CHECK(diff <= 3.0 * trace.standard_error(r, c));
        }
    }
}

TEST_CASE("error shrinks at the Monte Carlo rate when T grows by 100x") {
    const NetworkModel model = build_cycle(2, {0.5, 0.5});
    const SignalConfig cfg = SignalConfig::uniform(2, 1.0, 1.0);
    const Emp emp({1, 2}, {1});
    const InfoResult analytic = information_matrix(model, emp, cfg);
    const SimTrace coarse = simulate_information(model, emp, cfg, 10000, 21);
    const SimTrace fine = simulate_information(model, emp, cfg, 1000000, 21);
    const double err_coarse = (coarse.empirical_info - analytic.info).cwiseAbs().maxCoeff();
    const double err_fine = (fine.empirical_info - analytic.info).cwiseAbs().maxCoeff();
    // Expected ratio is ~10; leave generous slack for noise in both draws.
    CHECK(err_fine < err_coarse / 3.0);
}

TEST_CASE("sensor noise variances scale the information accumulation") {
    // Doubling every lambda halves the empirical information exactly,
    // realization by realization.
    const NetworkModel model = build_cycle(3, {0.4, 0.5, 0.6});
    const Emp emp({1, 2}, {1, 3});
    const SimTrace a =
        simulate_information(model, emp, SignalConfig::uniform(3, 1.0, 1.0), 5000, 3);
    const SimTrace b =
        simulate_information(model, emp, SignalConfig::uniform(3, 1.0, 2.0), 5000, 3);
    CHECK((a.empirical_info - 2.0 * b.empirical_info).cwiseAbs().maxCoeff() <= 1e-12);
}

} // TEST_SUITE
