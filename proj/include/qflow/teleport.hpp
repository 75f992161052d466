#pragma once

#include "qflow/flowmaps.hpp"
#include "qflow/statevec.hpp"

namespace qflow {

enum class PauliCorrection { I, X, Z, XZ };

struct BellOutcome {
    int index = 0; // measured Bell-basis element on qubits (1,2)
    PauliCorrection correction = PauliCorrection::I;
};

/// (|01> - |10>)/sqrt(2).
MultiState singlet();

/// Bell basis {Phi+, Phi-, Psi+, Psi-} on two qubits.
std::vector<MultiState> bell_basis();

MultiState apply_pauli(PauliCorrection p, const MultiState& qubit);

/// Correction table derived by brute force: for each Bell outcome, the
/// unique Pauli in {I, X, Z, XZ} reaching fidelity 1 on qubit 3.
PauliCorrection correction_for(int bell_index);

/// The singlet flow identity g then f: returns exactly -phi/2.
MultiState flow_teleport(const MultiState& phi);

/// Full protocol: build phi (x) Theta, Bell-measure qubits (1,2), apply the
/// broadcast correction to qubit 3.
std::pair<BellOutcome, MultiState> teleport_protocol(const MultiState& phi, Rng& rng);

/// |<a|b>| with global phase quotiented out.
double fidelity(const MultiState& a, const MultiState& b);

const char* correction_name(PauliCorrection p);

} // namespace qflow
