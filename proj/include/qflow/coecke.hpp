#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qflow/flowmaps.hpp"
#include "qflow/statevec.hpp"

namespace qflow {

struct FlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rank-one measurement box at a fixed time on a bipartite subproduct.
/// Absent lambda means projector (lambda = omega).
struct Box {
    int time = 0;      // strict temporal rank, 1 = earliest
    int a = 0, b = 0;  // factor pair, a < b
    MultiState omega;  // on (dims a, dims b)
    std::optional<MultiState> lambda;

    bool is_projector() const { return !lambda.has_value(); }
    const MultiState& lambda_state() const { return lambda ? *lambda : omega; }
    int other_leg(int leg) const { return leg == a ? b : a; }
};

struct Scenario {
    FactorSpace space;
    std::vector<Box> boxes;
    int input_factor = 1;
    MultiState input_state; // single factor
    MultiState rest_state;  // remaining factors in order

    void validate() const;
    MultiState initial_state() const;
    std::vector<int> rest_factors() const;
    bool all_projectors() const;
};

enum class Half { Omega, Lambda };

struct PathStep {
    int box = 0; // index into Scenario::boxes
    Half half = Half::Omega;
    MapKind kind = MapKind::F;
    bool op = false;
};

struct ResidualHalf {
    int box = 0;
    Half half = Half::Omega;
    int slot_a = 0, slot_b = 0;
};

/// Path of the line-crawling extraction plus the residual contraction
/// structure: off-path omega halves contract against the rest state,
/// off-path lambda halves are emitted into the final state.
struct FlowPath {
    std::vector<PathStep> steps;
    int output_factor = 0;
    bool exit_up = true; // false: chain result contracts against rest_state
    std::vector<ResidualHalf> contracted; // omega halves
    std::vector<ResidualHalf> emitted;    // lambda halves
};

/// Applies each box in ascending time order to the initial product state.
/// Output is unnormalized.
MultiState temporal_apply(const Scenario& scn);

/// Line-crawling extraction: start on the input factor moving upward;
/// moving up enters the omega half of the next box above (emits f), moving
/// down enters the lambda half of the next box below (emits g); op is set
/// when entry is on the second leg of the pair; exit on the partner leg with
/// vertical direction reversed. Throws FlowError for cyclic or
/// non-traceable scenarios.
FlowPath extract_flow(const Scenario& scn);

/// The bare chain result on the output line (stored ket components).
FlowVector chain_result(const FlowPath& path, const Scenario& scn);

/// Full flow-side output: chain result, residual contraction against the
/// rest state, and emitted halves assembled in factor order.
MultiState flow_apply(const FlowPath& path, const Scenario& scn);

struct VerifyReport {
    bool pass = false;
    bool both_zero = false;
    double max_discrepancy = 0.0;
    std::string mode; // "rank-one" or "projector-split"
    std::string detail;
};

/// Checks that temporal order and processing order agree: exact amplitude
/// equality for rank-one scenarios; for projector scenarios, factorization
/// across the output cut with the output part proportional to the chain.
VerifyReport verify_theorem(const Scenario& scn, double tol = 1e-9);

struct ProbeReport {
    int product_trials = 0;
    int entangled_trials = 0;
    int zero_cases = 0;
    double max_discrepancy = 0.0;
    bool pass = false;
};

/// Randomizes the template's states (product mode, then entangled mode) and
/// checks temporal = flow each time. Trials use per-trial derived seeds.
ProbeReport universality_probe(const Scenario& scn_template, int trials,
                               std::uint64_t seed, double tol = 1e-9);

} // namespace qflow
