#include "qflow/coecke.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace qflow {

void Scenario::validate() const {
    int n = space.factor_count();
    if (input_factor < 1 || input_factor > n) {
        throw DimensionError("input factor out of range");
    }
    if (input_state.space().factor_count() != 1 ||
        input_state.dim() != space.dim(input_factor)) {
        throw DimensionError("input state dimension mismatch");
    }
    std::vector<long> rest_dims;
    for (int f = 1; f <= n; ++f) {
        if (f != input_factor) {
            rest_dims.push_back(space.dim(f));
        }
    }
    if (rest_state.space().dims() != rest_dims) {
        throw DimensionError("rest state dims must be the remaining dims in order");
    }
    std::set<int> times;
    for (const Box& box : boxes) {
        if (box.a < 1 || box.b <= box.a || box.b > n) {
            throw DimensionError("box pair indices invalid");
        }
        if (!times.insert(box.time).second) {
            throw DimensionError("duplicate box time rank");
        }
        std::vector<long> pair_dims{space.dim(box.a), space.dim(box.b)};
        if (box.omega.space().dims() != pair_dims ||
            (box.lambda && box.lambda->space().dims() != pair_dims)) {
            throw DimensionError("box state dims do not match its pair");
        }
    }
}

std::vector<int> Scenario::rest_factors() const {
    std::vector<int> out;
    for (int f = 1; f <= space.factor_count(); ++f) {
        if (f != input_factor) {
            out.push_back(f);
        }
    }
    return out;
}

MultiState Scenario::initial_state() const {
    std::vector<std::pair<std::vector<int>, MultiState>> pieces;
    pieces.emplace_back(std::vector<int>{input_factor}, input_state);
    if (!rest_factors().empty()) {
        pieces.emplace_back(rest_factors(), rest_state);
    }
    return assemble(space, pieces);
}

bool Scenario::all_projectors() const {
    return std::all_of(boxes.begin(), boxes.end(),
                       [](const Box& b) { return b.is_projector(); });
}

MultiState temporal_apply(const Scenario& scn) {
    scn.validate();
    std::vector<int> order(scn.boxes.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return scn.boxes[x].time < scn.boxes[y].time;
    });
    MultiState state = scn.initial_state();
    for (int i : order) {
        const Box& box = scn.boxes[i];
        state = apply_rank_one(box.lambda_state(), box.omega,
                               SubsetSelector{box.a, box.b}, state);
    }
    return state;
}

namespace {

// Boxes covering each factor line, sorted by time.
std::vector<std::vector<int>> boxes_by_line(const Scenario& scn) {
    std::vector<std::vector<int>> lines(scn.space.factor_count() + 1);
    for (std::size_t i = 0; i < scn.boxes.size(); ++i) {
        lines[scn.boxes[i].a].push_back(static_cast<int>(i));
        lines[scn.boxes[i].b].push_back(static_cast<int>(i));
    }
    for (auto& line : lines) {
        std::sort(line.begin(), line.end(), [&](int x, int y) {
            return scn.boxes[x].time < scn.boxes[y].time;
        });
    }
    return lines;
}

bool earliest_on_line(const std::vector<std::vector<int>>& lines, int box, int line) {
    return lines[line].front() == box;
}

bool latest_on_line(const std::vector<std::vector<int>>& lines, int box, int line) {
    return lines[line].back() == box;
}

} // namespace

FlowPath extract_flow(const Scenario& scn) {
    scn.validate();
    auto lines = boxes_by_line(scn);
    FlowPath path;

    std::set<std::pair<int, int>> visited; // (box, half)
    int factor = scn.input_factor;
    bool up = true;
    int time = 0; // start below every box

    for (;;) {
        // Next box half on the current line in the current direction.
        int next = -1;
        for (int i : lines[factor]) {
            int t = scn.boxes[i].time;
            if (up && t > time && (next == -1 || t < scn.boxes[next].time)) {
                next = i;
            }
            if (!up && t < time && (next == -1 || t > scn.boxes[next].time)) {
                next = i;
            }
        }
        if (next == -1) {
            path.output_factor = factor;
            path.exit_up = up;
            break;
        }
        const Box& box = scn.boxes[next];
        Half half = up ? Half::Omega : Half::Lambda;
        if (!visited.insert({next, half == Half::Omega ? 0 : 1}).second) {
            throw FlowError("cyclic flow: box half revisited");
        }
        PathStep step;
        step.box = next;
        step.half = half;
        step.kind = up ? MapKind::F : MapKind::G;
        step.op = (factor == box.b);
        path.steps.push_back(step);
        factor = box.other_leg(factor);
        up = !up; // f exits downward, g exits upward
        time = box.time;
    }

    if (!path.exit_up && path.output_factor == scn.input_factor) {
        throw FlowError("non-traceable: path exits downward on the input line");
    }

    // Classify off-path halves: omega halves must face the initial rest
    // state below, lambda halves must face open air above.
    for (std::size_t i = 0; i < scn.boxes.size(); ++i) {
        const Box& box = scn.boxes[i];
        int id = static_cast<int>(i);
        if (!visited.count({id, 0})) {
            for (int leg : {box.a, box.b}) {
                if (leg == scn.input_factor ||
                    !earliest_on_line(lines, id, leg)) {
                    throw FlowError("non-traceable: off-path omega half of box at t=" +
                                    std::to_string(box.time) +
                                    " does not face the rest state");
                }
            }
            path.contracted.push_back({id, Half::Omega, box.a, box.b});
        }
        if (!visited.count({id, 1})) {
            for (int leg : {box.a, box.b}) {
                if (!latest_on_line(lines, id, leg)) {
                    throw FlowError("non-traceable: off-path lambda half of box at t=" +
                                    std::to_string(box.time) + " is covered from above");
                }
            }
            path.emitted.push_back({id, Half::Lambda, box.a, box.b});
        }
    }

    // A slot must not be consumed twice by the contraction.
    std::set<int> consumed;
    for (const ResidualHalf& r : path.contracted) {
        if (!consumed.insert(r.slot_a).second || !consumed.insert(r.slot_b).second) {
            throw FlowError("non-traceable: rest factor consumed twice");
        }
    }
    if (!path.exit_up && !consumed.insert(path.output_factor).second) {
        throw FlowError("non-traceable: output factor consumed twice");
    }
    return path;
}

FlowVector chain_result(const FlowPath& path, const Scenario& scn) {
    std::vector<FlowStep> steps;
    for (const PathStep& ps : path.steps) {
        const Box& box = scn.boxes[ps.box];
        steps.push_back({ps.kind, ps.op,
                         ps.half == Half::Omega ? box.omega : box.lambda_state()});
    }
    FlowVector input;
    input.comp = scn.input_state.amp();
    if (!steps.empty()) {
        input.polarity = steps.front().kind == MapKind::F ? Polarity::Bra : Polarity::Ket;
    }
    return evaluate_chain(steps, std::move(input));
}

MultiState flow_apply(const FlowPath& path, const Scenario& scn) {
    scn.validate();
    FlowVector chain = chain_result(path, scn);
    MultiState chain_state = MultiState::single(chain.comp);

    std::vector<int> rest = scn.rest_factors();
    auto rest_local = [&](int global) {
        auto it = std::lower_bound(rest.begin(), rest.end(), global);
        if (it == rest.end() || *it != global) {
            throw FlowError("contraction slot is not a rest factor");
        }
        return static_cast<int>(it - rest.begin()) + 1;
    };

    // Bra-side pieces contracting against the rest state.
    std::vector<std::pair<std::vector<int>, MultiState>> bra_pieces;
    for (const ResidualHalf& r : path.contracted) {
        bra_pieces.emplace_back(std::vector<int>{r.slot_a, r.slot_b},
                                scn.boxes[r.box].omega);
    }
    if (!path.exit_up) {
        bra_pieces.emplace_back(std::vector<int>{path.output_factor}, chain_state);
    }

    Complex scalar(1, 0);
    MultiState leftover = scn.rest_state;
    std::vector<int> leftover_slots = rest;
    if (!bra_pieces.empty()) {
        std::vector<int> slots;
        for (const auto& [s, st] : bra_pieces) {
            slots.insert(slots.end(), s.begin(), s.end());
        }
        std::sort(slots.begin(), slots.end());
        // Combined contraction state on the union of slots, then one
        // partial inner product against the rest state.
        std::vector<long> union_dims;
        for (int s : slots) {
            union_dims.push_back(scn.space.dim(s));
        }
        FactorSpace union_space(union_dims);
        std::vector<std::pair<std::vector<int>, MultiState>> local_pieces;
        auto union_local = [&](int global) {
            return static_cast<int>(std::lower_bound(slots.begin(), slots.end(), global) -
                                    slots.begin()) + 1;
        };
        for (const auto& [s, st] : bra_pieces) {
            std::vector<int> local;
            for (int g : s) {
                local.push_back(union_local(g));
            }
            local_pieces.emplace_back(local, st);
        }
        MultiState combined = assemble(union_space, local_pieces);
        std::vector<int> rest_sel;
        for (int s : slots) {
            rest_sel.push_back(rest_local(s));
        }
        leftover = partial_inner(combined, SubsetSelector(rest_sel), scn.rest_state);
        leftover_slots.clear();
        for (int f : rest) {
            if (!std::binary_search(slots.begin(), slots.end(), f)) {
                leftover_slots.push_back(f);
            }
        }
    }

    // Assemble the final state in factor order.
    std::vector<std::pair<std::vector<int>, MultiState>> pieces;
    if (path.exit_up) {
        pieces.emplace_back(std::vector<int>{path.output_factor}, chain_state);
    }
    for (const ResidualHalf& r : path.emitted) {
        pieces.emplace_back(std::vector<int>{r.slot_a, r.slot_b},
                            scn.boxes[r.box].lambda_state());
    }
    if (leftover.space().factor_count() == 0) {
        scalar *= leftover.amp(0);
    } else {
        pieces.emplace_back(leftover_slots, leftover);
    }
    MultiState out = assemble(scn.space, pieces);
    return out.scaled(scalar);
}

namespace {

double max_amp_diff(const MultiState& a, const MultiState& b) {
    double m = 0.0;
    for (long i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a.amp(i) - b.amp(i)));
    }
    return m;
}

} // namespace

VerifyReport verify_theorem(const Scenario& scn, double tol) {
    VerifyReport rep;
    FlowPath path = extract_flow(scn);
    MultiState temporal = temporal_apply(scn);
    MultiState flow = flow_apply(path, scn);

    if (!scn.all_projectors() || !path.exit_up) {
        rep.mode = "rank-one";
        rep.max_discrepancy = max_amp_diff(temporal, flow);
        rep.both_zero = temporal.is_zero() && flow.is_zero();
        rep.pass = rep.max_discrepancy <= tol;
        return rep;
    }

    rep.mode = "projector-split";
    bool t_zero = temporal.is_zero();
    bool f_zero = flow.is_zero();
    if (t_zero || f_zero) {
        rep.both_zero = t_zero && f_zero;
        rep.pass = rep.both_zero;
        rep.detail = rep.pass ? "both sides zero" : "only one side zero";
        return rep;
    }

    SubsetSelector left_cut(
        SubsetSelector{path.output_factor}.complement(scn.space.factor_count()));
    SplitResult split = split_across_cut(temporal, left_cut, 1e-8);
    if (!split.is_product()) {
        rep.pass = false;
        rep.detail = "temporal output does not factorize across the output cut";
        return rep;
    }
    MultiState chain_state = MultiState::single(chain_result(path, scn).comp);
    if (chain_state.is_zero()) {
        rep.pass = false;
        rep.detail = "chain result zero but temporal output nonzero";
        return rep;
    }
    MultiState chain_unit = chain_state.normalized_copy();
    Complex phase = inner(chain_unit, split.right);
    MultiState matched = chain_unit.scaled(phase);
    rep.max_discrepancy = max_amp_diff(split.right, matched);
    rep.pass = rep.max_discrepancy <= 1e-8;
    if (!rep.pass) {
        rep.detail = "output-factor part is not proportional to the chain result";
    }
    return rep;
}

namespace {

Scenario randomize(const Scenario& tmpl, Rng& rng, bool entangled) {
    Scenario scn = tmpl;
    auto draw = [&](const FactorSpace& sp) {
        return entangled ? random_state(sp, rng) : random_product_state(sp, rng);
    };
    for (Box& box : scn.boxes) {
        box.omega = draw(box.omega.space());
        if (box.lambda) {
            box.lambda = draw(box.lambda->space());
        }
    }
    scn.input_state = random_state(scn.input_state.space(), rng);
    scn.rest_state = draw(scn.rest_state.space());
    return scn;
}

} // namespace

ProbeReport universality_probe(const Scenario& scn_template, int trials,
                               std::uint64_t seed, double tol) {
    ProbeReport rep;
    rep.pass = true;
    for (int mode = 0; mode < 2; ++mode) {
        bool entangled = mode == 1;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(mode) * trials + t);
            Scenario scn = randomize(scn_template, rng, entangled);
            VerifyReport v = verify_theorem(scn, tol);
            rep.max_discrepancy = std::max(rep.max_discrepancy, v.max_discrepancy);
            if (v.both_zero) {
                ++rep.zero_cases;
            }
            if (!v.pass) {
                rep.pass = false;
            }
            (entangled ? rep.entangled_trials : rep.product_trials)++;
        }
    }
    return rep;
}

} // namespace qflow
