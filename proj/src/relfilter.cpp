#include "qflow/relfilter.hpp"

namespace qflow {

void TripleRelation::validate() const {
    for (const FiniteSet& s : sets) {
        if (s.size < 1) {
            throw RelationError("set size must be >= 1");
        }
    }
    for (const Triple& t : members) {
        for (int k = 0; k < 3; ++k) {
            if (t[k] < 0 || t[k] >= sets[k].size) {
                throw RelationError("triple out of range");
            }
        }
    }
}

TripleRelation TripleRelation::full(FiniteSet x1, FiniteSet x2, FiniteSet x3) {
    TripleRelation rel;
    rel.sets = {x1, x2, x3};
    for (int a = 0; a < x1.size; ++a) {
        for (int b = 0; b < x2.size; ++b) {
            for (int c = 0; c < x3.size; ++c) {
                rel.members.insert({a, b, c});
            }
        }
    }
    return rel;
}

void GraphFilter::validate(const TripleRelation& rel) const {
    int domain = coords == FilterCoords::Pair12 ? rel.sets[0].size : rel.sets[1].size;
    int codomain = coords == FilterCoords::Pair12 ? rel.sets[1].size : rel.sets[2].size;
    if (static_cast<int>(fn.size()) != domain) {
        throw RelationError("filter function must be total on its domain");
    }
    for (int v : fn) {
        if (v < 0 || v >= codomain) {
            throw RelationError("filter function value out of range");
        }
    }
}

TripleRelation filter_apply(const TripleRelation& rel, const GraphFilter& filter) {
    rel.validate();
    filter.validate(rel);
    TripleRelation out;
    out.sets = rel.sets;
    for (const Triple& t : rel.members) {
        bool keep = filter.coords == FilterCoords::Pair12 ? filter.fn[t[0]] == t[1]
                                                          : filter.fn[t[1]] == t[2];
        if (keep) {
            out.members.insert(t);
        }
    }
    return out;
}

bool filters_commute_check(const TripleRelation& rel, const GraphFilter& f1,
                           const GraphFilter& f2) {
    TripleRelation a = filter_apply(filter_apply(rel, f1), f2);
    TripleRelation b = filter_apply(filter_apply(rel, f2), f1);
    return a.members == b.members;
}

RelationalCoeckeResult relational_coecke(int x, const std::set<std::array<int, 2>>& y,
                                         const std::array<FiniteSet, 3>& sets,
                                         const std::vector<int>& f,
                                         const std::vector<int>& g) {
    TripleRelation s;
    s.sets = sets;
    for (const auto& [b, c] : y) {
        s.members.insert({x, b, c});
    }
    s.validate();

    GraphFilter g_filter{FilterCoords::Pair23, g};
    GraphFilter f_filter{FilterCoords::Pair12, f};
    TripleRelation out = filter_apply(filter_apply(s, g_filter), f_filter);

    RelationalCoeckeResult res;
    res.output = out.members;
    int fx = f.at(x);
    res.predicted = Triple{x, fx, g.at(fx)};
    res.matches_prediction =
        res.output.empty() || res.output == std::set<Triple>{*res.predicted};
    return res;
}

} // namespace qflow
