#pragma once

#include <vector>

#include "qflow/statevec.hpp"

namespace qflow {

enum class Polarity { Ket, Bra };
enum class MapKind { G, F };

/// Single-factor vector tagged with polarity. A bra stores the ket
/// components of the vector it is the bra of; conjugation happens inside
/// f_apply. With that convention the components of the final vector of a
/// chain are always the physical ket amplitudes, whichever polarity the
/// chain ends on.
struct FlowVector {
    Polarity polarity = Polarity::Ket;
    std::vector<Complex> comp;

    long dim() const { return static_cast<long>(comp.size()); }

    static FlowVector ket(std::vector<Complex> c) { return {Polarity::Ket, std::move(c)}; }
    static FlowVector bra(std::vector<Complex> c) { return {Polarity::Bra, std::move(c)}; }
};

/// Functional (dual) components of a bra: the conjugate of its stored ket
/// components.
std::vector<Complex> dual_components(const FlowVector& v);

/// One application of g or f induced by a two-factor state omega. op=true
/// enters on the second tensor leg.
struct FlowStep {
    MapKind kind = MapKind::G;
    bool op = false;
    MultiState omega; // exactly two factors
};

/// g_omega: ket -> bra. For omega = alpha (x) beta the resulting bra is
/// <alpha|x><beta|; anti-linear in omega, linear in x.
FlowVector g_apply(const FlowStep& step, const FlowVector& x);

/// f_omega: bra -> ket. For omega = alpha (x) beta the result is
/// <x|alpha> beta; linear in omega.
FlowVector f_apply(const FlowStep& step, const FlowVector& x);

/// Left fold of the steps in processing order (first step applied first).
FlowVector evaluate_chain(const std::vector<FlowStep>& steps, FlowVector input);

} // namespace qflow
