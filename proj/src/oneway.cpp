#include "qflow/oneway.hpp"

#include <cmath>

namespace qflow {

namespace {
const double kInvSqrt2 = 0.7071067811865475244008443621048490;

void check_qubit(const MultiState& s, const char* what) {
    if (s.space().factor_count() != 1 || s.dim() != 2) {
        throw DimensionError(std::string(what) + " must be a single qubit");
    }
    if (!s.normalized()) {
        throw DimensionError(std::string(what) + " must be normalized");
    }
}
} // namespace

MultiState entangle_input(const MultiState& psi) {
    check_qubit(psi, "psi");
    return MultiState(FactorSpace({2, 2}),
                      {psi.amp(0), Complex(0, 0), Complex(0, 0), psi.amp(1)});
}

std::pair<MultiState, MultiState> eta_basis(double phi) {
    Complex e = std::exp(Complex(0, -phi)) * kInvSqrt2;
    MultiState plus = MultiState::single({Complex(kInvSqrt2, 0), e});
    MultiState minus = MultiState::single({Complex(kInvSqrt2, 0), -e});
    return {plus, minus};
}

PhaseGateRun simulate_phase_gate(const MultiState& psi, double phi, Rng& rng) {
    check_qubit(psi, "psi");
    MultiState joint = entangle_input(psi);
    auto [plus, minus] = eta_basis(phi);
    MeasurementRecord rec =
        measure_in_basis({plus, minus}, SubsetSelector{1}, joint, rng);
    PhaseGateRun run;
    run.phi = phi;
    run.branch = rec.outcome == 0 ? Branch::Plus : Branch::Minus;
    run.classical_bit = static_cast<int>(rec.outcome);
    const MultiState& eta = rec.outcome == 0 ? plus : minus;
    run.post = partial_inner(eta, SubsetSelector{1}, rec.post).normalized_copy();
    return run;
}

MultiState corrected_basis_state(const MultiState& omega, Branch branch) {
    check_qubit(omega, "omega");
    if (branch == Branch::Plus) {
        return omega;
    }
    return MultiState::single({omega.amp(0), -omega.amp(1)});
}

MultiState corrected_basis_state(const MultiState& omega, const ByproductFrame& frame) {
    return corrected_basis_state(omega,
                                 frame.z_parity == 0 ? Branch::Plus : Branch::Minus);
}

MultiState unitary_oracle(const MultiState& psi, double phi) {
    if (psi.space().factor_count() != 1 || psi.dim() != 2) {
        throw DimensionError("unitary_oracle expects a single qubit");
    }
    return MultiState::single({psi.amp(0), psi.amp(1) * std::exp(Complex(0, phi))});
}

AmplitudeIdentityReport amplitude_identity_check(const MultiState& psi, double phi,
                                                 const MultiState& omega) {
    check_qubit(psi, "psi");
    check_qubit(omega, "omega");
    MultiState joint = entangle_input(psi);
    auto [plus, minus] = eta_basis(phi);
    // Exact unnormalized branch components; each carries the common 1/sqrt(2)
    // branch factor.
    MultiState psi_plus = partial_inner(plus, SubsetSelector{1}, joint);
    MultiState psi_minus = partial_inner(minus, SubsetSelector{1}, joint);
    MultiState omega_tilde = corrected_basis_state(omega, Branch::Minus);

    AmplitudeIdentityReport rep;
    rep.omega_psi_plus = inner(omega, psi_plus);
    rep.omega_u_psi = inner(omega, unitary_oracle(psi, phi)) * kInvSqrt2;
    rep.omega_tilde_psi_minus = inner(omega_tilde, psi_minus);
    rep.max_deviation =
        std::max(std::abs(rep.omega_psi_plus - rep.omega_u_psi),
                 std::abs(rep.omega_u_psi - rep.omega_tilde_psi_minus));
    return rep;
}

MbqcEstimate mbqc_transition_probability(const MultiState& psi,
                                         const std::vector<double>& phis,
                                         const MultiState& omega, long trials,
                                         std::uint64_t seed) {
    check_qubit(psi, "psi");
    check_qubit(omega, "omega");
    if (trials < 1) {
        throw DimensionError("trials must be >= 1");
    }

    MultiState evolved = psi;
    for (double phi : phis) {
        evolved = unitary_oracle(evolved, phi);
    }
    MbqcEstimate est;
    est.exact = std::norm(inner(omega, evolved));
    est.trials = trials;

    for (long t = 0; t < trials; ++t) {
        Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
        MultiState state = psi;
        ByproductFrame frame;
        for (double phi : phis) {
            PhaseGateRun run = simulate_phase_gate(state, phi, rng);
            frame.fold(run.classical_bit);
            state = run.post;
        }
        MultiState target = corrected_basis_state(omega, frame);
        double p = std::norm(inner(target, state));
        if (rng.uniform() < p) {
            ++est.successes;
        }
    }
    est.estimate = static_cast<double>(est.successes) / static_cast<double>(trials);
    est.std_error =
        std::sqrt(std::max(est.estimate * (1.0 - est.estimate), 1e-300) /
                  static_cast<double>(trials));
    return est;
}

} // namespace qflow
