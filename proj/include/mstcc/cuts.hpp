#pragma once

/// Valid inequalities handled by the solver, in sparse form. All four
/// classes have 0/1 coefficient vectors, so a cut is its support set plus a
/// right-hand side: subtour elimination (sum over E(S) <= |S|-1), odd cycle
/// (sum over U <= (|U|-1)/2), clique (sum over Q <= 1), and single conflict
/// pair (x_e1 + x_e2 <= 1).

#include <vector>

namespace mstcc {

enum class CutKind
{
    SubtourElimination,
    OddCycle,
    Clique,
    EdgePair
};

struct Cut
{
    CutKind kind = CutKind::SubtourElimination;
    std::vector<long> support;      // variable ids, ascending
    double rhs = 0.0;
    double violation = 0.0;         // at the point that produced the cut
    std::vector<long> vertex_set;   // SubtourElimination only: the set S, ascending
};

inline double cut_activity(const Cut& cut, const std::vector<double>& x)
{
    double total = 0.0;
    for (long id : cut.support)
        total += x[id];
    return total;
}

/// Identical row test (support and right-hand side), used for pool
/// deduplication; both sides are exact small rationals, never computed.
inline bool same_row(const Cut& a, const Cut& b)
{
    return a.rhs == b.rhs && a.support == b.support;
}

}  // namespace mstcc
