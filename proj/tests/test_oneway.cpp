#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qflow/oneway.hpp"
#include "test_helpers.hpp"

using namespace qflow;
using namespace qflow::testing;

namespace {
const double kPi = 3.14159265358979323846;
const double kS = 0.7071067811865476;
}

TEST_CASE("entangling step copies the amplitudes onto the diagonal") {
    MultiState psi = MultiState::single({Complex(0.6, 0), Complex(0, 0.8)});
    MultiState joint = entangle_input(psi);
    CHECK(std::abs(joint.amp(0) - Complex(0.6, 0)) < 1e-15);
    CHECK(std::abs(joint.amp(3) - Complex(0, 0.8)) < 1e-15);
    CHECK(std::abs(joint.amp(1)) == 0.0);
    CHECK(std::abs(joint.amp(2)) == 0.0);
}

TEST_CASE("measurement basis is orthonormal for every angle") {
    for (double phi : {0.0, 0.3, kPi / 2, kPi, 5.1}) {
        auto [plus, minus] = eta_basis(phi);
        CHECK(plus.normalized());
        CHECK(minus.normalized());
        CHECK(std::abs(inner(plus, minus)) < 1e-12);
    }
}

TEST_CASE("phase gate oracle at pi/2 on |+>") {
    MultiState out = unitary_oracle(ket_plus(), kPi / 2);
    CHECK(std::abs(out.amp(0) - Complex(kS, 0)) < 1e-15);
    CHECK(std::abs(out.amp(1) - Complex(0, kS)) < 1e-15);
}

TEST_CASE("plus branch realizes the phase gate directly") {
    Rng rng(61);
    for (int t = 0; t < 400; ++t) {
        double phi = 2 * kPi * (t % 17) / 17.0;
        MultiState psi = random_state(FactorSpace({2}), rng);
        Rng trial = Rng::derived(61, t);
        PhaseGateRun run = simulate_phase_gate(psi, phi, trial);
        MultiState expect = unitary_oracle(psi, phi);
        if (run.branch == Branch::Minus) {
            expect = MultiState::single({expect.amp(0), -expect.amp(1)});
        }
        // Post state is normalized and both branches carry probability 1/2,
        // so the branch state equals the expected one exactly up to phase.
        Complex phase = inner(expect, run.post);
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-9);
        CHECK(max_diff(run.post, expect.scaled(phase)) < 1e-9);
    }
}

TEST_CASE("both branches occur with probability 1/2") {
    long minus = 0;
    long n = 20000;
    MultiState psi = MultiState::single({Complex(0.28, 0), Complex(0.96, 0)});
    for (long t = 0; t < n; ++t) {
        Rng rng = Rng::derived(71, t);
        PhaseGateRun run = simulate_phase_gate(psi, 1.1, rng);
        if (run.branch == Branch::Minus) {
            ++minus;
        }
    }
    double freq = static_cast<double>(minus) / n;
    double sigma = std::sqrt(0.25 / n);
    CHECK(std::abs(freq - 0.5) < 5.0 * sigma);
}

TEST_CASE("minus-branch correction flips the |1> amplitude") {
    MultiState om = MultiState::single({Complex(0.6, 0), Complex(0, 0.8)});
    MultiState fixed = corrected_basis_state(om, Branch::Minus);
    CHECK(std::abs(fixed.amp(0) - Complex(0.6, 0)) < 1e-15);
    CHECK(std::abs(fixed.amp(1) - Complex(0, -0.8)) < 1e-15);
    CHECK(max_diff(corrected_basis_state(om, Branch::Plus), om) == 0.0);

    ByproductFrame frame;
    frame.fold(1);
    frame.fold(1);
    CHECK(max_diff(corrected_basis_state(om, frame), om) == 0.0);
    frame.fold(1);
    CHECK(max_diff(corrected_basis_state(om, frame), fixed) == 0.0);
}

TEST_CASE("branch amplitudes agree with the gate amplitude") {
    Rng rng(81);
    for (int t = 0; t < 1000; ++t) {
        MultiState psi = random_state(FactorSpace({2}), rng);
        MultiState omega = random_state(FactorSpace({2}), rng);
        double phi = (rng.uniform() - 0.5) * 4 * kPi;
        AmplitudeIdentityReport rep = amplitude_identity_check(psi, phi, omega);
        CHECK(rep.max_deviation < 1e-12);
        // The shared branch factor is 1/sqrt(2) in magnitude-squared terms.
        MultiState evolved = unitary_oracle(psi, phi);
        CHECK(std::abs(rep.omega_u_psi - inner(omega, evolved) * kS) < 1e-15);
    }
}

TEST_CASE("sampled transition probabilities hit the exact values") {
    struct Case {
        std::vector<double> phis;
        double exact;
    };
    // psi = omega = |+>; a single phase phi gives p = cos^2(phi/2).
    std::vector<Case> cases = {
        {{kPi}, 0.0},       {{2 * kPi / 3}, 0.25}, {{kPi / 2}, 0.5},
        {{kPi / 3}, 0.75},  {{0.0}, 1.0},
    };
    long trials = 20000;
    for (size_t i = 0; i < cases.size(); ++i) {
        MbqcEstimate est = mbqc_transition_probability(
            ket_plus(), cases[i].phis, ket_plus(), trials, 1000 + i);
        CHECK(est.exact == doctest::Approx(cases[i].exact).epsilon(1e-12));
        double sigma = std::sqrt(cases[i].exact * (1 - cases[i].exact) / trials);
        CHECK(std::abs(est.estimate - cases[i].exact) <= 4.0 * sigma + 1e-12);
    }
}

TEST_CASE("multi-step chains compose the phases") {
    // Two gates phi1 + phi2 act like one gate with the summed phase; here
    // the angles sum to pi/2, so p = cos^2(pi/4) = 1/2.
    MbqcEstimate two = mbqc_transition_probability(
        ket_plus(), {kPi / 3, kPi / 6}, ket_plus(), 20000, 5);
    CHECK(two.exact == doctest::Approx(0.5).epsilon(1e-12));
    double sigma = two.std_error + 1e-12;
    CHECK(std::abs(two.estimate - two.exact) <= 5.0 * sigma);

    // Byproduct frame handling: odd number of minus branches still lands on
    // the right answer because the test basis is frame-corrected.
    MbqcEstimate three = mbqc_transition_probability(
        ket_plus(), {kPi, kPi, kPi}, ket_plus(), 4000, 6);
    CHECK(three.exact == doctest::Approx(0.0));
    CHECK(three.successes == 0);
}

TEST_CASE("input validation") {
    Rng rng(1);
    CHECK_THROWS_AS(simulate_phase_gate(
                        MultiState::single({Complex(2, 0), Complex(0, 0)}), 0.1, rng),
                    DimensionError);
    CHECK_THROWS_AS(
        mbqc_transition_probability(ket_plus(), {0.1}, ket_plus(), 0, 1),
        DimensionError);
}
