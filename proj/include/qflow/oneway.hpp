#pragma once

#include <vector>

#include "qflow/statevec.hpp"

namespace qflow {

enum class Branch { Plus, Minus };

struct PhaseGateRun {
    double phi = 0.0;
    Branch branch = Branch::Plus;
    MultiState post;        // normalized single-qubit post state
    int classical_bit = 0;  // 0 for +, 1 for -
};

/// Accumulated Z byproduct fed forward between steps.
struct ByproductFrame {
    int z_parity = 0;
    void fold(int bit) { z_parity ^= (bit & 1); }
};

/// alpha|00> + beta|11> built directly from the input amplitudes.
MultiState entangle_input(const MultiState& psi);

/// Orthonormal pair eta± = (|0> ± e^{-i phi}|1>)/sqrt(2); the conjugate in
/// the phase makes the realized gate carry phase +phi on the second qubit.
std::pair<MultiState, MultiState> eta_basis(double phi);

PhaseGateRun simulate_phase_gate(const MultiState& psi, double phi, Rng& rng);

/// Branch + leaves omega unchanged; branch - flips the sign of the |1>
/// amplitude (Z), compensating the minus-branch byproduct.
MultiState corrected_basis_state(const MultiState& omega, Branch branch);
MultiState corrected_basis_state(const MultiState& omega, const ByproductFrame& frame);

/// Exact application of the diagonal phase gate.
MultiState unitary_oracle(const MultiState& psi, double phi);

struct AmplitudeIdentityReport {
    Complex omega_psi_plus;  // <omega|psi+> with the 1/sqrt(2) branch factor
    Complex omega_u_psi;     // <omega|U|psi>/sqrt(2)
    Complex omega_tilde_psi_minus;
    double max_deviation = 0.0;
};

/// Checks <omega|psi+> = <omega|U|psi> = <omega~|psi-> at amplitude level,
/// with all three carried at the common 1/sqrt(2) branch scale.
AmplitudeIdentityReport amplitude_identity_check(const MultiState& psi, double phi,
                                                 const MultiState& omega);

struct MbqcEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double exact = 0.0;
    long successes = 0;
    long trials = 0;
};

/// Measurement-only estimate of |<omega|U_k...U_1|psi>|^2: per trial the
/// state is threaded through one phase-gate step per angle, classical bits
/// fold into the Z frame, and the final projective test uses the
/// frame-corrected omega.
MbqcEstimate mbqc_transition_probability(const MultiState& psi,
                                         const std::vector<double>& phis,
                                         const MultiState& omega, long trials,
                                         std::uint64_t seed);

} // namespace qflow
