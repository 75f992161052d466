#pragma once

#include <array>
#include <optional>
#include <set>
#include <vector>

#include <stdexcept>

namespace qflow {

struct RelationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Elements are 0..size-1.
struct FiniteSet {
    int size = 1;
};

using Triple = std::array<int, 3>;

/// Subset of X1 x X2 x X3.
struct TripleRelation {
    std::array<FiniteSet, 3> sets;
    std::set<Triple> members;

    void validate() const;
    static TripleRelation full(FiniteSet x1, FiniteSet x2, FiniteSet x3);
};

enum class FilterCoords { Pair12, Pair23 };

/// Graph of a total function between two adjacent coordinates; the filter
/// keeps triples whose selected pair lies on the graph.
struct GraphFilter {
    FilterCoords coords = FilterCoords::Pair23;
    std::vector<int> fn; // fn[x] for every x in the domain set

    void validate(const TripleRelation& rel) const;
};

TripleRelation filter_apply(const TripleRelation& rel, const GraphFilter& filter);

bool filters_commute_check(const TripleRelation& rel, const GraphFilter& f1,
                           const GraphFilter& f2);

struct RelationalCoeckeResult {
    std::set<Triple> output;
    std::optional<Triple> predicted; // (x, f(x), g(f(x)))
    bool matches_prediction = false; // output empty or exactly {predicted}
};

/// Builds S = {x} x Y, applies the g-filter on (2,3) first and the f-filter
/// on (1,2) second, and checks the surviving set against the prediction.
RelationalCoeckeResult relational_coecke(int x, const std::set<std::array<int, 2>>& y,
                                         const std::array<FiniteSet, 3>& sets,
                                         const std::vector<int>& f,
                                         const std::vector<int>& g);

} // namespace qflow
