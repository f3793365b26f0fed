/// Max-flow / min-cut engine and subtour-elimination separation tests.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "mstcc/generator.hpp"
#include "mstcc/instance.hpp"
#include "mstcc/oracle.hpp"
#include "mstcc/sec_separation.hpp"
#include "mstcc/union_find.hpp"

namespace {

using namespace mstcc;

/// Test-side arc record mirroring what went into a FlowNetwork.
struct ArcSpec
{
    long tail;
    long head;
    double cap;
};

/// Minimum s-t cut value by enumerating every bipartition with s on the
/// source side and t on the sink side.
double min_cut_by_enumeration(long n, const std::vector<ArcSpec>& arcs,
                              long s, long t)
{
    double best = std::numeric_limits<double>::infinity();
    for (unsigned long mask = 0; mask < (1ul << n); ++mask)
    {
        if (!(mask >> s & 1ul) || (mask >> t & 1ul))
            continue;
        double capacity = 0.0;
        for (const ArcSpec& a : arcs)
            if ((mask >> a.tail & 1ul) && !(mask >> a.head & 1ul))
                capacity += a.cap;
        best = std::min(best, capacity);
    }
    return best;
}

/// Capacity of the bipartition reported by the solver.
double side_capacity(const std::vector<ArcSpec>& arcs,
                     const std::vector<char>& source_side)
{
    double capacity = 0.0;
    for (const ArcSpec& a : arcs)
        if (source_side[a.tail] && !source_side[a.head])
            capacity += a.cap;
    return capacity;
}

/// Structural soundness of one subtour cut against the instance and point.
void check_sec_cut(const Instance& inst, const std::vector<double>& x,
                   const Cut& cut)
{
    REQUIRE(cut.kind == CutKind::SubtourElimination);
    const long size = static_cast<long>(cut.vertex_set.size());
    REQUIRE(size >= 2);
    REQUIRE(size < inst.vertex_count);
    REQUIRE(std::is_sorted(cut.vertex_set.begin(), cut.vertex_set.end()));
    REQUIRE(cut.rhs == static_cast<double>(size - 1));

    std::vector<char> in_set(inst.vertex_count + 1, 0);
    for (long v : cut.vertex_set)
    {
        REQUIRE(v >= 1);
        REQUIRE(v <= inst.vertex_count);
        in_set[v] = 1;
    }
    std::vector<long> support;
    double activity = 0.0;
    for (long e = 0; e < inst.edge_count(); ++e)
        if (in_set[inst.edges[e].u] && in_set[inst.edges[e].v])
        {
            support.push_back(e);
            activity += x[e];
        }
    REQUIRE(cut.support == support);
    REQUIRE(cut.violation == Catch::Approx(activity - cut.rhs));
    REQUIRE(cut.violation > 1e-5);
}

/// Connectivity of the edges an integral point selects.
bool selection_connected(const Instance& inst, const std::vector<double>& x)
{
    DisjointSets comp(inst.vertex_count);
    for (long e = 0; e < inst.edge_count(); ++e)
        if (x[e] > 0.5)
            comp.unite(inst.edges[e].u - 1, inst.edges[e].v - 1);
    return comp.components() == 1;
}

/// Rescales a boxed point until it sums to the target, preserving [0,1].
std::vector<double> with_total(std::vector<double> x, double target)
{
    double total = 0.0;
    for (double v : x)
        total += v;
    if (total > target && total > 0.0)
    {
        const double f = target / total;
        for (double& v : x)
            v *= f;
    }
    else if (total < target)
    {
        double headroom = 0.0;
        for (double v : x)
            headroom += 1.0 - v;
        const double t = (target - total) / headroom;
        for (double& v : x)
            v += t * (1.0 - v);
    }
    return x;
}

}  // namespace

TEST_CASE("a unit path carries one unit of flow", "[maxflow]")
{
    FlowNetwork net(3);
    net.add_arc(0, 1, 1.0);
    net.add_arc(1, 2, 1.0);
    const MinCut cut = max_flow_min_cut(net, 0, 2);
    REQUIRE(cut.value == Catch::Approx(1.0));
    REQUIRE(cut.source_side[0] == 1);
    REQUIRE(cut.source_side[2] == 0);
}

TEST_CASE("disconnected terminals give a zero cut", "[maxflow]")
{
    FlowNetwork net(4);
    net.add_arc(0, 1, 2.5);
    net.add_arc(2, 3, 1.5);
    const MinCut cut = max_flow_min_cut(net, 0, 3);
    REQUIRE(cut.value == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(cut.source_side[0] == 1);
    REQUIRE(cut.source_side[1] == 1);
    REQUIRE(cut.source_side[3] == 0);
}

TEST_CASE("a bottleneck limits a wide network", "[maxflow]")
{
    // two parallel 2-capacity routes joined through one 1.5-capacity arc
    FlowNetwork net(4);
    net.add_arc(0, 1, 2.0);
    net.add_arc(0, 2, 2.0);
    net.add_arc(1, 3, 1.0);
    net.add_arc(2, 3, 1.0);
    net.add_arc(1, 2, 0.5);
    const MinCut cut = max_flow_min_cut(net, 0, 3);
    REQUIRE(cut.value == Catch::Approx(2.0));
}

TEST_CASE("flow values match cut enumeration", "[maxflow][property]")
{
    std::mt19937_64 rng(31337);
    for (int round = 0; round < 150; ++round)
    {
        const long n = 3 + static_cast<long>(rng() % 6);    // up to 8 nodes
        FlowNetwork net(n);
        std::vector<ArcSpec> arcs;
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
            {
                if (a == b || rng() % 100 >= 40)
                    continue;
                const double cap = 0.25 * static_cast<double>(1 + rng() % 8);
                const double rev =
                    rng() % 2 ? 0.25 * static_cast<double>(rng() % 5) : 0.0;
                net.add_arc(a, b, cap, rev);
                arcs.push_back({a, b, cap});
                if (rev > 0.0)
                    arcs.push_back({b, a, rev});
            }

        const double truth = min_cut_by_enumeration(n, arcs, 0, n - 1);
        const MinCut cut = max_flow_min_cut(net, 0, n - 1);
        REQUIRE(cut.value == Catch::Approx(truth).margin(1e-9));
        REQUIRE(cut.source_side[0] == 1);
        REQUIRE(cut.source_side[n - 1] == 0);
        // the reported side realises the optimal value
        REQUIRE(side_capacity(arcs, cut.source_side)
                == Catch::Approx(truth).margin(1e-9));
    }
}

TEST_CASE("the support network mirrors the point", "[maxflow]")
{
    Instance inst;
    inst.vertex_count = 3;
    inst.edges = {{1, 2, 1}, {2, 3, 2}, {1, 3, 3}};
    const std::vector<double> x{0.5, 1e-12, 0.8};
    const FlowNetwork net = support_network(inst, x);
    REQUIRE(net.node_count == 3);
    REQUIRE(net.arcs.size() == 4);      // edge 1 dropped, two arcs per edge
    REQUIRE(net.arcs[0].cap == 0.5);
    REQUIRE(net.arcs[1].cap == 0.5);    // reverse carries the value too
    REQUIRE(net.arcs[2].cap == 0.8);
    REQUIRE(net.arcs[3].cap == 0.8);
}

TEST_CASE("a tree indicator has no integral cut", "[sec]")
{
    Instance path;
    path.vertex_count = 4;
    path.edges = {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}};
    REQUIRE(separate_sec_integral(path, {1.0, 1.0, 1.0}).empty());
}

TEST_CASE("an isolated vertex exposes the packed triangle", "[sec]")
{
    Instance inst;
    inst.vertex_count = 4;
    inst.edges = {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {3, 4, 1}};
    const std::vector<double> x{1.0, 1.0, 1.0, 0.0};
    const auto cuts = separate_sec_integral(inst, x);
    REQUIRE(cuts.size() == 1);
    REQUIRE(cuts[0].vertex_set == std::vector<long>{1, 2, 3});
    REQUIRE(cuts[0].violation == Catch::Approx(1.0));
    check_sec_cut(inst, x, cuts[0]);
}

TEST_CASE("integral separation agrees with the component check",
          "[sec][property]")
{
    std::mt19937_64 rng(555);
    for (int round = 0; round < 200; ++round)
    {
        GeneratorSpec spec;
        spec.n = 4 + static_cast<long>(rng() % 5);
        spec.m = std::min(spec.n + 2 + static_cast<long>(rng() % 4),
                          spec.n * (spec.n - 1) / 2);
        spec.p = 0;
        spec.seed = rng();
        const Instance inst = generate_instance(spec);

        // a random selection of exactly n-1 edges
        std::vector<long> order(inst.edges.size());
        std::iota(order.begin(), order.end(), 0L);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<double> x(inst.edges.size(), 0.0);
        for (long i = 0; i < inst.vertex_count - 1; ++i)
            x[order[i]] = 1.0;

        const auto cuts = separate_sec_integral(inst, x);
        REQUIRE(cuts.empty() == selection_connected(inst, x));
        for (const Cut& cut : cuts)
            check_sec_cut(inst, x, cut);
        REQUIRE(cuts.empty() == !naive_sec_violation(inst, x).has_value());
    }
}

TEST_CASE("a midpoint of two trees passes the fractional check", "[sec]")
{
    Instance cycle;
    cycle.vertex_count = 4;
    cycle.edges = {{1, 2, 1}, {3, 4, 1}, {2, 3, 1}, {1, 4, 1}};
    const std::vector<double> x{1.0, 1.0, 0.5, 0.5};
    REQUIRE(separate_sec_fractional(cycle, x).empty());
}

TEST_CASE("the fractional triangle is caught", "[sec]")
{
    Instance inst;
    inst.vertex_count = 5;
    inst.edges = {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {3, 4, 1}, {4, 5, 1}};
    const std::vector<double> x{0.75, 0.75, 0.75, 1.0, 0.75};
    const auto cuts = separate_sec_fractional(inst, x);
    REQUIRE_FALSE(cuts.empty());
    bool found_triangle = false;
    for (const Cut& cut : cuts)
    {
        check_sec_cut(inst, x, cut);
        if (cut.vertex_set == std::vector<long>{1, 2, 3})
        {
            found_triangle = true;
            REQUIRE(cut.violation == Catch::Approx(0.25));
            REQUIRE(cut.support == std::vector<long>{0, 1, 2});
        }
    }
    REQUIRE(found_triangle);
}

TEST_CASE("a tree support never yields fractional cuts", "[sec]")
{
    Instance inst;
    inst.vertex_count = 5;
    inst.edges = {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1},
                  {1, 3, 1}, {2, 5, 1}};
    // mass only on the path edges, which form a spanning tree
    const std::vector<double> x{1.0, 1.0, 1.0, 1.0, 0.0, 0.0};
    REQUIRE(separate_sec_fractional(inst, x).empty());
}

TEST_CASE("fractional separation is exact", "[sec][property]")
{
    std::mt19937_64 rng(90210);
    long violated_seen = 0, clean_seen = 0;
    for (int round = 0; round < 120; ++round)
    {
        GeneratorSpec spec;
        spec.n = 4 + static_cast<long>(rng() % 5);
        spec.m = std::min(spec.n + 2 + static_cast<long>(rng() % 4),
                          spec.n * (spec.n - 1) / 2);
        spec.p = 0;
        spec.seed = rng();
        const Instance inst = generate_instance(spec);

        // random boxed point rescaled onto the cardinality hyperplane
        std::vector<double> x(inst.edges.size());
        for (double& v : x)
            v = 0.05 * static_cast<double>(rng() % 21);
        x = with_total(std::move(x),
                       static_cast<double>(inst.vertex_count - 1));

        const auto cuts = separate_sec_fractional(inst, x);
        const auto naive = naive_sec_violation(inst, x);
        REQUIRE(cuts.empty() == !naive.has_value());

        if (!naive)
        {
            ++clean_seen;
            continue;
        }
        ++violated_seen;
        double best = 0.0;
        for (const Cut& cut : cuts)
        {
            check_sec_cut(inst, x, cut);
            best = std::max(best, cut.violation);
        }
        // the separator reaches the globally worst violation
        REQUIRE(best == Catch::Approx(naive->violation).margin(1e-7));
    }
    REQUIRE(violated_seen > 20);
    REQUIRE(clean_seen > 20);
}
