#pragma once

#include <cmath>

#include "qflow/statevec.hpp"

namespace qflow::testing {

inline double max_diff(const MultiState& a, const MultiState& b) {
    REQUIRE(a.dim() == b.dim());
    double m = 0.0;
    for (long i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a.amp(i) - b.amp(i)));
    }
    return m;
}

inline MultiState ket0() { return MultiState::single({Complex(1, 0), Complex(0, 0)}); }
inline MultiState ket1() { return MultiState::single({Complex(0, 0), Complex(1, 0)}); }

inline MultiState ket_plus() {
    const double s = 0.7071067811865476;
    return MultiState::single({Complex(s, 0), Complex(s, 0)});
}

inline MultiState ket_minus() {
    const double s = 0.7071067811865476;
    return MultiState::single({Complex(s, 0), Complex(-s, 0)});
}

} // namespace qflow::testing
