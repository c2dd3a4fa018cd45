#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "catqkd/bell_horodecki.hpp"
#include "catqkd/keyrate.hpp"
#include "test_helpers.hpp"

using namespace catqkd;
using namespace catqkd::testing;

namespace {
const double kTsirelson = 2.0 * std::sqrt(2.0);
}

TEST_CASE("binary_entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    // Frozen from 50-digit evaluation.
    CHECK(binary_entropy(0.11) == doctest::Approx(0.4999159581645280).epsilon(1e-13));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("qber") {
    // Zero for the protocol's filtered states at scattered points.
    for (const auto& [g, t] : {std::pair{0.3, 0.2}, std::pair{0.7, 0.9},
                               std::pair{0.999, 0.5}, std::pair{0.0, 0.4}}) {
        CHECK(qber(filter_pipeline(ChannelPoint(g, t))) <= 1e-12);
    }

    CHECK(qber(FilteredState{maximally_mixed(), 1.0}) ==
          doctest::Approx(0.5).epsilon(1e-12));

    // Sign-convention regression: without the B1 = -sigma_x flip the singlet's
    // perfect anti-correlation would read as Q = 1, not 0.
    const auto z = MeasurementVector(0, 0, 1);
    CHECK(joint_outcome_probs(singlet(), z, z).disagree() ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("holevo_bound") {
    CHECK(holevo_bound(2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(holevo_bound(kTsirelson) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(holevo_bound(2.23606797749979) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-13));
    CHECK_THROWS_AS(holevo_bound(1.9), std::invalid_argument);
    CHECK_THROWS_AS(holevo_bound(2.9), std::invalid_argument);

    // Monotone decreasing on [2, 2 sqrt 2].
    double prev = holevo_bound(2.0);
    for (int i = 1; i <= 40; ++i) {
        const double s = 2.0 + (kTsirelson - 2.0) * i / 40.0;
        const double cur = holevo_bound(s);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("devetak_winter") {
    CHECK(devetak_winter(ChannelPoint(0.3, 1.0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(devetak_winter(ChannelPoint(0.0, 0.5)) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(devetak_winter(ChannelPoint(0.5, 0.5)) ==
          doctest::Approx(0.18872187554086714).epsilon(1e-13));

    // Equals 1 - holevo(S_max) since sqrt((S/2)^2 - 1) = gamma^{2(1-T)}.
    for (const auto& [g, t] : {std::pair{0.2, 0.3}, std::pair{0.8, 0.6},
                               std::pair{0.95, 0.99}}) {
        const ChannelPoint pt(g, t);
        CHECK(devetak_winter(pt) ==
              doctest::Approx(1.0 - holevo_bound(s_max_closed_form(pt))).epsilon(1e-12));
    }
}

TEST_CASE("secret_key_fraction") {
    CHECK(secret_key_fraction(ChannelPoint(0.0, 0.5)) == doctest::Approx(0.0));
    CHECK(secret_key_fraction(ChannelPoint(0.5, 1.0)) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(secret_key_fraction(ChannelPoint(0.5, 0.5)) ==
          doctest::Approx(0.02158636987322549).epsilon(1e-12));
}

TEST_CASE("optimize_gamma") {
    // Long-distance regime: gamma_opt ~ 0.742, K/T^2 ~ 0.0459.
    const auto far = optimize_gamma(1e-3);
    CHECK(far.gamma_opt == doctest::Approx(0.7418077753309453).epsilon(1e-6));
    CHECK(far.k_opt / 1e-6 == doctest::Approx(0.045873797249148834).epsilon(1e-9));

    // T = 1: supremum at the lower gamma bound.
    const auto lossless = optimize_gamma(1.0);
    CHECK(lossless.gamma_opt == doctest::Approx(1e-6).epsilon(1e-6));
    CHECK(lossless.k_opt == doctest::Approx(0.999998000002).epsilon(1e-12));

    // Dense-grid oracle at T = 0.1 (1e5 points).
    const auto opt = optimize_gamma(0.1);
    double grid_best = 0.0;
    for (int i = 1; i < 100000; ++i) {
        const double g = i / 100000.0;
        grid_best = std::max(grid_best, secret_key_fraction(ChannelPoint(g, 0.1)));
    }
    CHECK(std::abs(opt.k_opt - grid_best) <= 1e-8);
    CHECK(opt.k_opt + 1e-12 >= grid_best);

    // Local-max certificate, perturbations clamped to the bounds.
    for (double t : {0.1, 0.5, 0.9, 1.0}) {
        const auto o = optimize_gamma(t);
        for (double delta : {-1e-4, 1e-4}) {
            const double g = std::clamp(o.gamma_opt + delta, 1e-6, 1.0 - 1e-6);
            CHECK(secret_key_fraction(ChannelPoint(g, t)) <= o.k_opt + 1e-12);
        }
    }

    CHECK_THROWS_AS(optimize_gamma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(optimize_gamma(0.5, GammaBounds{0.9, 0.1}), std::invalid_argument);
}

TEST_CASE("asymptotic_alpha and its maximizer") {
    CHECK(asymptotic_alpha(0.74) == doctest::Approx(0.04582754434377138).epsilon(1e-12));
    CHECK(asymptotic_alpha(0.01) > 0.0);
    CHECK(asymptotic_alpha(0.01) < 1e-3);
    CHECK_THROWS_AS(asymptotic_alpha(0.0), std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_alpha(1.0), std::invalid_argument);

    const auto best = maximize_alpha();
    CHECK(best.gamma_star == doctest::Approx(0.742015162602195).epsilon(1e-7));
    CHECK(best.alpha_star == doctest::Approx(0.04582927714331520).epsilon(1e-12));

    // Small-T limit of the optimized fraction reproduces alpha*.
    const auto far = optimize_gamma(1e-3);
    CHECK(std::abs(far.k_opt / 1e-6 - best.alpha_star) <= 1e-3);
}

TEST_CASE("biphoton_key") {
    CHECK(biphoton_key(0.0, 0.7).key_fraction == doctest::Approx(0.49).epsilon(1e-13));
    CHECK(biphoton_key(0.05, 1.0).key_fraction ==
          doctest::Approx(0.22495048999966620).epsilon(1e-12));
    CHECK(std::abs(biphoton_key(0.0714917588444857, 1.0).key_fraction) <= 1e-9);

    const auto unusable = biphoton_key(0.2, 1.0);
    CHECK_FALSE(unusable.usable);
    CHECK(unusable.key_fraction == 0.0);
    CHECK(unusable.s < 2.0);

    CHECK_THROWS_AS(biphoton_key(-0.01, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(biphoton_key(0.6, 1.0), std::invalid_argument);
}

TEST_CASE("biphoton_zero_crossing") {
    const double q0 = biphoton_zero_crossing();
    CHECK(q0 == doctest::Approx(0.0714917588444857).epsilon(1e-9));
    CHECK(q0 > 0.071);
    CHECK(q0 < 0.072);
}

TEST_CASE("critical_qber") {
    // Frozen 50-digit values.
    const auto far = critical_qber(1e-4);
    REQUIRE(far.has_value());
    CHECK(far->q_crit == doctest::Approx(0.0668588597938981).epsilon(1e-6));

    const auto at11 = critical_qber(transmission_from_distance(11.0, 0.2));
    REQUIRE(at11.has_value());
    CHECK(at11->q_crit == doctest::Approx(0.0606671473078529).epsilon(1e-6));
    CHECK(std::abs(at11->k_cat - at11->k_biphoton) <= 1e-8);  // root certificate

    // Monotone non-decreasing with distance (empirically determined).
    double prev = -1.0;
    for (double km : {1.0, 11.0, 50.0, 100.0, 150.0, 200.0}) {
        const auto qc = critical_qber(transmission_from_distance(km, 0.2));
        REQUIRE(qc.has_value());
        CHECK(qc->q_crit >= prev - 1e-12);
        prev = qc->q_crit;
    }
    CHECK(prev > 0.065);
    CHECK(prev < 0.069);
}

TEST_CASE("keyrate_report") {
    const auto pt = ChannelPoint::from_distance(0.5, 11.0, 0.2);
    const auto r = keyrate_report(pt);
    CHECK(r.gamma == 0.5);
    CHECK(r.transmission == doctest::Approx(0.6025595860743578).epsilon(1e-13));
    REQUIRE(r.distance_km.has_value());
    CHECK(*r.distance_km == 11.0);
    CHECK(r.key_fraction == r.p * r.r_dw);  // exact by construction
    CHECK(r.qber <= 1e-12);
    CHECK(r.holevo == doctest::Approx(holevo_bound(r.s_max)).epsilon(1e-13));
    CHECK(r.r_dw == doctest::Approx(1.0 - r.holevo).epsilon(1e-12));
}

TEST_CASE("full matrix pipeline reproduces the closed-form key fraction") {
    // rho -> filter -> C -> S_max -> holevo -> r_DW, no closed forms anywhere.
    for (int i = 0; i < 15; ++i) {
        for (int j = 1; j <= 15; ++j) {
            const ChannelPoint pt(0.999 * i / 14.0, j / 15.0);
            const auto piped = filter_pipeline(pt);
            const double s = s_max_from_state(piped.state).s_max;
            const double k_piped =
                piped.success_prob * (1.0 - holevo_bound(std::min(s, 2.0 * std::sqrt(2.0))));
            CHECK(std::abs(k_piped - secret_key_fraction(pt)) <= 1e-10);
        }
    }
}

TEST_CASE("optimal key fraction decreases with distance") {
    double prev = 2.0;
    for (double km : {0.0, 25.0, 50.0, 75.0, 100.0, 150.0, 200.0}) {
        const auto o = optimize_gamma(transmission_from_distance(km, 0.2));
        CHECK(o.k_opt < prev);
        prev = o.k_opt;
    }
}
