/// Odd-cycle separation tests: the signed duplication, the cleanup to
/// simple odd cycles, and exactness against naive cycle enumeration.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "mstcc/instance.hpp"
#include "mstcc/oddcycle_separation.hpp"
#include "mstcc/oracle.hpp"

namespace {

using namespace mstcc;

ConflictGraphView triangle_graph()
{
    return ConflictGraphView(3, {{0, 1}, {0, 2}, {1, 2}});
}

ConflictGraphView five_cycle_graph()
{
    return ConflictGraphView(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
}

/// Random point on the 0.05 grid, repaired so every conflict pair sums to
/// at most one (the separator's premise). Repairs only lower values, so
/// the pass settles in one sweep and the grid is preserved.
std::vector<double> repaired_grid_point(const ConflictGraphView& cg,
                                        std::mt19937_64& rng, bool mid_band)
{
    std::vector<double> x(cg.node_count);
    for (double& v : x)
        v = mid_band ? 0.05 * static_cast<double>(7 + rng() % 7)
                     : 0.05 * static_cast<double>(rng() % 21);
    for (long a = 0; a < cg.node_count; ++a)
        for (long b : cg.neighbors[a])
        {
            if (b < a)
                continue;
            if (x[a] + x[b] > 1.0)
            {
                if (x[a] >= x[b])
                    x[a] = 1.0 - x[b];
                else
                    x[b] = 1.0 - x[a];
            }
        }
    return x;
}

/// Structural soundness plus validity over every stable set of cg.
void check_odd_cycle_cut(const ConflictGraphView& cg,
                         const std::vector<double>& x, const Cut& cut)
{
    REQUIRE(cut.kind == CutKind::OddCycle);
    const long k = static_cast<long>(cut.support.size());
    REQUIRE(k >= 3);
    REQUIRE(k % 2 == 1);
    REQUIRE(std::is_sorted(cut.support.begin(), cut.support.end()));
    REQUIRE(cut.rhs == static_cast<double>(k - 1) / 2.0);

    double total = 0.0;
    for (long u : cut.support)
        total += x[u];
    REQUIRE(cut.violation == Catch::Approx(total - cut.rhs));
    REQUIRE(cut.violation > 1e-5);

    // no stable set packs more than rhs members of the support
    REQUIRE(cg.node_count <= 16);
    for (unsigned long mask = 0; mask < (1ul << cg.node_count); ++mask)
    {
        bool stable = true;
        for (long a = 0; a < cg.node_count && stable; ++a)
        {
            if (!(mask >> a & 1ul))
                continue;
            for (long b : cg.neighbors[a])
                if (b > a && (mask >> b & 1ul))
                {
                    stable = false;
                    break;
                }
        }
        if (!stable)
            continue;
        long packed = 0;
        for (long u : cut.support)
            if (mask >> u & 1ul)
                ++packed;
        REQUIRE(static_cast<double>(packed) <= cut.rhs);
    }
}

}  // namespace

TEST_CASE("the half triangle duplicates into six epsilon arcs", "[oddcycle]")
{
    const std::vector<double> x{0.5, 0.5, 0.5};
    const AuxiliaryGraph aux = build_auxiliary(triangle_graph(), x);
    REQUIRE(aux.node_count() == 6);
    REQUIRE(aux.retained == std::vector<long>{0, 1, 2});

    long arc_entries = 0;
    for (const auto& list : aux.adj)
        for (const AuxiliaryGraph::Arc& arc : list)
        {
            ++arc_entries;
            REQUIRE(arc.weight == 1e-6);    // lifted from the exact zero
            // plus copies link to minus copies only
            REQUIRE((arc.head % 2) != (&list - aux.adj.data()) % 2);
        }
    REQUIRE(arc_entries == 12);     // three pairs, two mirrored edges each
}

TEST_CASE("integral values empty the duplication", "[oddcycle]")
{
    const AuxiliaryGraph aux = build_auxiliary(triangle_graph(), {1.0, 0.0, 1.0});
    REQUIRE(aux.node_count() == 0);
    REQUIRE(separate_odd_cycles(triangle_graph(), {1.0, 0.0, 1.0}).empty());
}

TEST_CASE("a single pair mirrors its weight", "[oddcycle]")
{
    const ConflictGraphView cg(2, {{0, 1}});
    const AuxiliaryGraph aux = build_auxiliary(cg, {0.7, 0.2});
    REQUIRE(aux.node_count() == 4);
    REQUIRE(aux.adj[0].size() == 1);    // 0+ to 1-
    REQUIRE(aux.adj[0][0].head == 3);
    REQUIRE(aux.adj[0][0].weight == Catch::Approx(0.05));
    REQUIRE(aux.adj[1].size() == 1);    // 0- to 1+
    REQUIRE(aux.adj[1][0].head == 2);
    REQUIRE(aux.adj[1][0].weight == Catch::Approx(0.05));

    // no odd cycle exists, so separation comes back empty
    REQUIRE(separate_odd_cycles(cg, {0.7, 0.2}).empty());
}

TEST_CASE("a node at an integral value loses both copies", "[oddcycle]")
{
    const ConflictGraphView cg(3, {{0, 1}, {1, 2}});
    const AuxiliaryGraph aux = build_auxiliary(cg, {1.0, 0.5, 0.3});
    REQUIRE(aux.retained == std::vector<long>{1, 2});
    REQUIRE(aux.slot[0] == -1);
}

TEST_CASE("the half triangle yields exactly one cut", "[oddcycle]")
{
    const std::vector<double> x{0.5, 0.5, 0.5};
    const auto cuts = separate_odd_cycles(triangle_graph(), x);
    REQUIRE(cuts.size() == 1);      // three walks, one canonical cycle
    REQUIRE(cuts[0].support == std::vector<long>{0, 1, 2});
    REQUIRE(cuts[0].rhs == 1.0);
    REQUIRE(cuts[0].violation == Catch::Approx(0.5));
    check_odd_cycle_cut(triangle_graph(), x, cuts[0]);
}

TEST_CASE("the boundary five-cycle is not violated", "[oddcycle]")
{
    const std::vector<double> x(5, 0.4);
    REQUIRE(separate_odd_cycles(five_cycle_graph(), x).empty());
    REQUIRE_FALSE(naive_odd_cycle_violation(five_cycle_graph(), x).has_value());
}

TEST_CASE("pushing the five-cycle past the boundary is caught", "[oddcycle]")
{
    const std::vector<double> x(5, 0.45);
    const auto cuts = separate_odd_cycles(five_cycle_graph(), x);
    REQUIRE(cuts.size() == 1);
    REQUIRE(cuts[0].support == std::vector<long>{0, 1, 2, 3, 4});
    REQUIRE(cuts[0].rhs == 2.0);
    REQUIRE(cuts[0].violation == Catch::Approx(0.25));
    check_odd_cycle_cut(five_cycle_graph(), x, cuts[0]);
}

TEST_CASE("separation is exact on repaired grid points", "[oddcycle][property]")
{
    std::mt19937_64 rng(777);
    long violated_seen = 0, clean_seen = 0;

    for (int round = 0; round < 200; ++round)
    {
        const long n = 4 + static_cast<long>(rng() % 9);    // up to 12 nodes
        std::vector<ConflictPair> pairs;
        for (long a = 0; a < n; ++a)
            for (long b = a + 1; b < n; ++b)
                if (rng() % 100 < 35)
                    pairs.push_back({a, b});
        const ConflictGraphView cg(n, pairs);
        const std::vector<double> x =
            repaired_grid_point(cg, rng, round % 2 == 0);

        const auto cuts = separate_odd_cycles(cg, x);
        const auto naive = naive_odd_cycle_violation(cg, x);
        REQUIRE(cuts.empty() == !naive.has_value());

        if (naive)
        {
            ++violated_seen;
            for (const Cut& cut : cuts)
                check_odd_cycle_cut(cg, x, cut);
        }
        else
            ++clean_seen;
    }
    REQUIRE(violated_seen > 20);
    REQUIRE(clean_seen > 20);
}

TEST_CASE("cuts are deduplicated across starting nodes", "[oddcycle]")
{
    // two triangles sharing node 0, both pushed past the boundary
    const ConflictGraphView cg(5, {{0, 1}, {0, 2}, {1, 2},
                                   {0, 3}, {0, 4}, {3, 4}});
    const std::vector<double> x(5, 0.5);
    const auto cuts = separate_odd_cycles(cg, x);
    REQUIRE(cuts.size() >= 1);
    REQUIRE(cuts.size() <= 2);      // at most one per distinct triangle
    std::set<std::vector<long>> supports;
    for (const Cut& cut : cuts)
    {
        REQUIRE(supports.insert(cut.support).second);
        check_odd_cycle_cut(cg, x, cut);
    }
}
