#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pftrack/ungm.hpp"

using namespace pftrack;

TEST_CASE("ungm_transition examples")
{
    CHECK(ungm_transition(0.0, 1, 0.0) == doctest::Approx(8.0).epsilon(1e-12));
    // 0.5 + 25/2 + 8*cos(1.2)
    CHECK(ungm_transition(1.0, 2, 0.0) ==
          doctest::Approx(0.5 + 12.5 + 8.0 * std::cos(1.2)).epsilon(1e-12));
    CHECK(ungm_transition(1.0, 2, 0.0) == doctest::Approx(15.8989).epsilon(1e-4));
    CHECK(ungm_transition(0.0, 1, -8.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ungm_observe examples")
{
    CHECK(ungm_observe(0.0, 0.0) == 0.0);
    CHECK(ungm_observe(20.0, 0.0) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(ungm_observe(-20.0, 0.0) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("ungm_likelihood examples")
{
    // Zero innovation at unit variance: the standard normal peak.
    CHECK(ungm_likelihood(5.0, 10.0, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-9));
    CHECK(ungm_likelihood(5.0, 10.0, 1.0) == doctest::Approx(0.39894).epsilon(1e-4));

    // Symmetric in the innovation sign.
    CHECK(ungm_likelihood(7.0, 10.0, 1.0) ==
          doctest::Approx(ungm_likelihood(3.0, 10.0, 1.0)).epsilon(1e-12));

    // Strictly decreasing as the innovation magnitude grows.
    double prev = ungm_likelihood(5.0, 10.0, 1.0);
    for (double off = 0.5; off <= 3.0; off += 0.5) {
        const double cur = ungm_likelihood(5.0 + off, 10.0, 1.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("rmse examples")
{
    CHECK(rmse({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(rmse({0, 0}, {1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rmse({0, 0}, {3, 4}) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
    CHECK_THROWS_AS(rmse({1, 2}, {1}), LengthMismatch);
}

TEST_CASE("run_comparison strategy-identity control")
{
    // With the traditional strategy on both sides and equal seeds, the two
    // result columns must match exactly.
    UngmParams params;
    params.runs = 2;
    params.steps = 30;
    params.seed = 5;
    params.traditional_both = true;
    const auto results = run_comparison(params);
    REQUIRE(results.size() == 2);
    for (const auto& r : results) {
        CHECK(r.rmse_trpf == r.rmse_irpf);
        REQUIRE(r.estimates_trpf.size() == r.estimates_irpf.size());
        for (std::size_t k = 0; k < r.estimates_trpf.size(); ++k)
            CHECK(r.estimates_trpf[k] == r.estimates_irpf[k]);
    }
}

TEST_CASE("run_comparison output shape and determinism")
{
    UngmParams params;
    params.runs = 3;
    params.steps = 25;
    params.particle_count = 50;
    params.seed = 9;

    const auto a = run_comparison(params);
    const auto b = run_comparison(params);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].true_states.size() == 25);
        CHECK(a[i].estimates_trpf.size() == 25);
        CHECK(a[i].estimates_irpf.size() == 25);
        CHECK(a[i].rmse_trpf == b[i].rmse_trpf);
        CHECK(a[i].rmse_irpf == b[i].rmse_irpf);
        CHECK(a[i].true_states == b[i].true_states);
        CHECK(a[i].estimates_trpf == b[i].estimates_trpf);
        CHECK(a[i].estimates_irpf == b[i].estimates_irpf);
        CHECK(a[i].rmse_trpf >= 0.0);
        CHECK(a[i].rmse_irpf >= 0.0);
    }
}
