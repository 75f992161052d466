#pragma once

#include <array>

#include "qflow/statevec.hpp"

namespace qflow {

/// Basis for a +/-1-valued measurement at analyzer angle a (half-angle
/// rotation, so the singlet correlation is -cos(a - b)).
std::vector<MultiState> analyzer_basis(double angle);

struct EprEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double exact = 0.0; // -cos(a - b)
    long trials = 0;
};

/// Sampled product-of-outcomes correlation on the singlet, both qubits
/// measured in rotated bases. Per-trial derived seeds.
EprEstimate epr_correlation(double a, double b, long trials, std::uint64_t seed);

struct ChshResult {
    double value = 0.0; // |S| from sampled correlations
    double exact = 0.0; // 2*sqrt(2)
    std::array<EprEstimate, 4> terms;
};

/// CHSH combination at the standard angles a=0, a'=pi/2, b=pi/4, b'=3pi/4.
ChshResult chsh_standard(long trials_per_pair, std::uint64_t seed);

} // namespace qflow
