#include "qflow/flowmaps.hpp"

#include <string>

namespace qflow {

namespace {

struct Legs {
    long d1, d2;
    const MultiState* omega;
    Complex at(long i, long j) const { return omega->amp(i * d2 + j); }
};

Legs legs_of(const FlowStep& step) {
    if (step.omega.space().factor_count() != 2) {
        throw DimensionError("flow step omega must have exactly two factors");
    }
    return {step.omega.space().dims()[0], step.omega.space().dims()[1], &step.omega};
}

} // namespace

std::vector<Complex> dual_components(const FlowVector& v) {
    std::vector<Complex> out(v.comp.size());
    for (std::size_t i = 0; i < v.comp.size(); ++i) {
        out[i] = std::conj(v.comp[i]);
    }
    return out;
}

FlowVector g_apply(const FlowStep& step, const FlowVector& x) {
    if (step.kind != MapKind::G) {
        throw DimensionError("g_apply called with an f step");
    }
    if (x.polarity != Polarity::Ket) {
        throw DimensionError("g consumes a ket");
    }
    Legs w = legs_of(step);
    long in = step.op ? w.d2 : w.d1;
    long out_dim = step.op ? w.d1 : w.d2;
    if (x.dim() != in) {
        throw DimensionError("g entry dimension mismatch");
    }
    // Dual components of the output bra: B[j] = sum_i conj(omega[i,j]) x[i]
    // (op: B[i] = sum_j conj(omega[i,j]) x[j]). Stored as ket components,
    // i.e. conjugated.
    std::vector<Complex> comp(out_dim, Complex(0, 0));
    for (long o = 0; o < out_dim; ++o) {
        Complex dual(0, 0);
        for (long e = 0; e < in; ++e) {
            Complex entry = step.op ? w.at(o, e) : w.at(e, o);
            dual += std::conj(entry) * x.comp[e];
        }
        comp[o] = std::conj(dual);
    }
    return FlowVector::bra(std::move(comp));
}

FlowVector f_apply(const FlowStep& step, const FlowVector& x) {
    if (step.kind != MapKind::F) {
        throw DimensionError("f_apply called with a g step");
    }
    if (x.polarity != Polarity::Bra) {
        throw DimensionError("f consumes a bra");
    }
    Legs w = legs_of(step);
    long in = step.op ? w.d2 : w.d1;
    long out_dim = step.op ? w.d1 : w.d2;
    if (x.dim() != in) {
        throw DimensionError("f entry dimension mismatch");
    }
    // out[j] = sum_i conj(x[i]) omega[i,j] (op: out[i] = sum_j conj(x[j])
    // omega[i,j]) with x the ket components of the vector whose bra is meant.
    std::vector<Complex> comp(out_dim, Complex(0, 0));
    for (long o = 0; o < out_dim; ++o) {
        for (long e = 0; e < in; ++e) {
            Complex entry = step.op ? w.at(o, e) : w.at(e, o);
            comp[o] += std::conj(x.comp[e]) * entry;
        }
    }
    return FlowVector::ket(std::move(comp));
}

FlowVector evaluate_chain(const std::vector<FlowStep>& steps, FlowVector input) {
    FlowVector v = std::move(input);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        try {
            v = (steps[k].kind == MapKind::G) ? g_apply(steps[k], v)
                                              : f_apply(steps[k], v);
        } catch (const DimensionError& e) {
            throw DimensionError("chain step " + std::to_string(k) + ": " + e.what());
        }
    }
    return v;
}

} // namespace qflow
