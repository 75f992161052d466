#include "qflow/epr.hpp"

#include <cmath>

#include "qflow/teleport.hpp"

namespace qflow {

std::vector<MultiState> analyzer_basis(double angle) {
    double c = std::cos(angle / 2.0);
    double s = std::sin(angle / 2.0);
    return {MultiState::single({Complex(c, 0), Complex(s, 0)}),
            MultiState::single({Complex(-s, 0), Complex(c, 0)})};
}

EprEstimate epr_correlation(double a, double b, long trials, std::uint64_t seed) {
    std::vector<MultiState> basis_a = analyzer_basis(a);
    std::vector<MultiState> basis_b = analyzer_basis(b);
    MultiState theta = singlet();

    long sum = 0;
    for (long t = 0; t < trials; ++t) {
        Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
        MeasurementRecord first =
            measure_in_basis(basis_a, SubsetSelector{1}, theta, rng);
        MeasurementRecord second =
            measure_in_basis(basis_b, SubsetSelector{2}, first.post, rng);
        int va = first.outcome == 0 ? 1 : -1;
        int vb = second.outcome == 0 ? 1 : -1;
        sum += va * vb;
    }
    EprEstimate est;
    est.trials = trials;
    est.estimate = static_cast<double>(sum) / static_cast<double>(trials);
    est.exact = -std::cos(a - b);
    est.std_error = std::sqrt(
        std::max(1.0 - est.estimate * est.estimate, 1e-12) /
        static_cast<double>(trials));
    return est;
}

ChshResult chsh_standard(long trials_per_pair, std::uint64_t seed) {
    const double pi = 3.14159265358979323846;
    double a = 0.0, ap = pi / 2.0, b = pi / 4.0, bp = 3.0 * pi / 4.0;
    ChshResult res;
    res.terms[0] = epr_correlation(a, b, trials_per_pair, seed);
    res.terms[1] = epr_correlation(a, bp, trials_per_pair, seed + 1);
    res.terms[2] = epr_correlation(ap, b, trials_per_pair, seed + 2);
    res.terms[3] = epr_correlation(ap, bp, trials_per_pair, seed + 3);
    res.value = std::abs(res.terms[0].estimate - res.terms[1].estimate +
                         res.terms[2].estimate + res.terms[3].estimate);
    res.exact = 2.0 * std::sqrt(2.0);
    return res;
}

} // namespace qflow
