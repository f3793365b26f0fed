#pragma once

/// Deterministic instance generator for two benchmark families. Type1 draws
/// a random spanning tree, adds random extra edges until the simple graph
/// has m edges, and picks p conflict pairs uniformly among all edge pairs.
/// Type2 uses the same graphs but never puts both edges of a pair inside the
/// seeded tree, so that tree certifies feasibility.

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "instance.hpp"

namespace mstcc {

enum class Family
{
    Type1,
    Type2
};

struct GeneratorSpec
{
    long n = 0;
    long m = 0;
    long p = 0;
    Family family = Family::Type1;
    long long cost_lo = 1;
    long long cost_hi = 100;
    std::uint64_t seed = 0;
};

namespace detail {

/// Uniform draw from {0, ..., k-1} by rejection, so the stream of values is
/// identical across standard library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t k)
{
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t overhang = (max % k + 1) % k;
    const std::uint64_t top = max - overhang;
    std::uint64_t draw = rng();
    while (draw > top)
        draw = rng();
    return draw % k;
}

}  // namespace detail

inline Instance generate_instance(const GeneratorSpec& spec)
{
    const long n = spec.n, m = spec.m, p = spec.p;
    if (n < 1)
        throw std::invalid_argument("generate_instance: need at least one vertex");
    if (m < n - 1)
        throw std::invalid_argument("generate_instance: m < n-1 cannot be connected");
    if (m > n * (n - 1) / 2)
        throw std::invalid_argument("generate_instance: m exceeds simple graph capacity");
    if (spec.cost_lo < 1 || spec.cost_hi < spec.cost_lo)
        throw std::invalid_argument("generate_instance: cost range must be positive");
    const long tree_edges = n - 1;
    const long pair_capacity = m * (m - 1) / 2;
    const long available = spec.family == Family::Type2
                               ? pair_capacity - tree_edges * (tree_edges - 1) / 2
                               : pair_capacity;
    if (p < 0 || p > available)
        throw std::invalid_argument("generate_instance: p exceeds available pairs");

    std::mt19937_64 rng(spec.seed);

    // 1. RANDOM VERTEX RELABELING
    std::vector<long> label(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        label[i] = i + 1;
    for (long i = n - 1; i > 0; --i)
    {
        const long j = static_cast<long>(detail::uniform_below(rng, i + 1));
        std::swap(label[i], label[j]);
    }

    // 2. SPANNING TREE: attach each vertex to a random earlier one
    Instance inst;
    inst.vertex_count = n;
    std::set<std::pair<long, long>> present;
    for (long pos = 1; pos < n; ++pos)
    {
        const long anchor = static_cast<long>(detail::uniform_below(rng, pos));
        const long a = std::min(label[anchor], label[pos]);
        const long b = std::max(label[anchor], label[pos]);
        inst.edges.push_back({a, b, 0});
        present.insert({a, b});
    }

    // 3. EXTRA EDGES until the simple graph has m edges
    while (inst.edge_count() < m)
    {
        const long a = static_cast<long>(detail::uniform_below(rng, n)) + 1;
        const long b = static_cast<long>(detail::uniform_below(rng, n)) + 1;
        if (a == b)
            continue;
        const std::pair<long, long> key{std::min(a, b), std::max(a, b)};
        if (!present.insert(key).second)
            continue;
        inst.edges.push_back({key.first, key.second, 0});
    }

    // 4. COSTS
    const std::uint64_t span =
        static_cast<std::uint64_t>(spec.cost_hi - spec.cost_lo) + 1;
    for (Edge& e : inst.edges)
        e.cost = spec.cost_lo
                 + static_cast<long long>(detail::uniform_below(rng, span));

    // 5. CONFLICT PAIRS (Type2 skips pairs lying inside the seeded tree)
    std::set<ConflictPair> pairs;
    while (static_cast<long>(pairs.size()) < p)
    {
        const long i = static_cast<long>(detail::uniform_below(rng, m));
        const long j = static_cast<long>(detail::uniform_below(rng, m));
        if (i == j)
            continue;
        const ConflictPair pair{std::min(i, j), std::max(i, j)};
        if (spec.family == Family::Type2 && pair.second < tree_edges)
            continue;
        pairs.insert(pair);
    }
    inst.conflicts.assign(pairs.begin(), pairs.end());

    inst.name = std::to_string(n) + "-" + std::to_string(m) + "-" + std::to_string(p);
    return inst;
}

}  // namespace mstcc
