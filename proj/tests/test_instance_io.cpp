/// Instance model, text format, validator, and generator tests.

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "mstcc/generator.hpp"
#include "mstcc/instance.hpp"
#include "mstcc/instance_io.hpp"
#include "mstcc/oracle.hpp"

namespace {

using namespace mstcc;

Instance k3_with_conflict()
{
    Instance inst;
    inst.name = "3-3-1";
    inst.vertex_count = 3;
    inst.edges = {{1, 2, 1}, {2, 3, 2}, {1, 3, 3}};
    inst.conflicts = {{0, 1}};
    return inst;
}

/// Line number carried by the error raised while parsing the given text.
long failing_line(const std::string& text)
{
    try
    {
        parse_instance(text);
    }
    catch (const ParseError& e)
    {
        return e.line;
    }
    FAIL("expected a parse error");
    return -1;
}

}  // namespace

TEST_CASE("parse accepts the smallest connected input", "[instance_io]")
{
    const Instance inst = parse_instance("3 2 0\n1 2 1\n2 3 2\n");
    REQUIRE(inst.vertex_count == 3);
    REQUIRE(inst.edge_count() == 2);
    REQUIRE(inst.conflicts.empty());
    REQUIRE(inst.edges[0] == Edge{1, 2, 1});
    REQUIRE(inst.edges[1] == Edge{2, 3, 2});
    REQUIRE(inst.name == "3-2-0");
    REQUIRE(validate(inst).empty());
}

TEST_CASE("parse reads the triangle with one conflict pair", "[instance_io]")
{
    const Instance inst = parse_instance("3 3 1\n1 2 1\n2 3 2\n1 3 3\n1 2\n");
    REQUIRE(inst.vertex_count == 3);
    REQUIRE(inst.edge_count() == 3);
    REQUIRE(inst.conflicts == std::vector<ConflictPair>{{0, 1}});
    REQUIRE(validate(inst).empty());
}

TEST_CASE("parse handles comments, names, and blank lines", "[instance_io]")
{
    const std::string text =
        "# a comment\n"
        "# name: demo\n"
        "\n"
        "3 2 0   # trailing comment\n"
        "1 2 1\n"
        "2 3 2\n";
    const Instance inst = parse_instance(text);
    REQUIRE(inst.name == "demo");
    REQUIRE(inst.edge_count() == 2);
}

TEST_CASE("parse rejects a self conflict pair", "[instance_io]")
{
    const std::string text = "3 3 1\n1 2 1\n2 3 2\n1 3 3\n1 1\n";
    REQUIRE_THROWS_AS(parse_instance(text), ParseError);
    REQUIRE_THROWS_WITH(parse_instance(text),
                        Catch::Matchers::ContainsSubstring("repeats an edge"));
    REQUIRE(failing_line(text) == 5);
}

TEST_CASE("parse reports malformed input with line numbers", "[instance_io]")
{
    // malformed header
    REQUIRE(failing_line("3 two 0\n") == 1);
    // vertex id out of range
    REQUIRE(failing_line("3 2 0\n1 4 1\n2 3 2\n") == 2);
    // self-loop edge
    REQUIRE(failing_line("3 2 0\n2 2 1\n2 3 2\n") == 2);
    // missing edge line: the error points at the end of input
    REQUIRE(failing_line("3 2 0\n1 2 1\n") == 2);
    // conflict edge index out of range
    REQUIRE(failing_line("3 3 1\n1 2 1\n2 3 2\n1 3 3\n1 4\n") == 5);
    // duplicate conflict pair, regardless of order
    REQUIRE(failing_line("4 4 2\n1 2 1\n2 3 1\n3 4 1\n1 4 1\n1 2\n2 1\n") == 7);
    // trailing data after the last expected line
    REQUIRE(failing_line("3 2 0\n1 2 1\n2 3 2\n7 7 7\n") == 4);
    // empty input
    REQUIRE(failing_line("") == 0);
}

TEST_CASE("parse rejects bad headers", "[instance_io]")
{
    REQUIRE_THROWS_WITH(parse_instance("0 0 0\n"),
                        Catch::Matchers::ContainsSubstring("positive"));
    REQUIRE_THROWS_WITH(parse_instance("3 -1 0\n"),
                        Catch::Matchers::ContainsSubstring("negative"));
    REQUIRE_THROWS_WITH(parse_instance("3 2\n1 2 1\n2 3 2\n"),
                        Catch::Matchers::ContainsSubstring("header"));
}

TEST_CASE("validate flags each violation with a stable tag", "[instance_io]")
{
    REQUIRE(validate(k3_with_conflict()).empty());

    Instance disconnected;
    disconnected.vertex_count = 4;
    disconnected.edges = {{1, 2, 1}, {3, 4, 1}};
    const auto issues = validate(disconnected);
    REQUIRE(issues.size() == 1);
    REQUIRE(issues[0].rfind("Disconnected:", 0) == 0);

    Instance bad_index = k3_with_conflict();
    bad_index.conflicts.push_back({0, 3});
    REQUIRE(validate(bad_index).size() == 1);
    REQUIRE(validate(bad_index)[0].rfind("BadEdgeIndex:", 0) == 0);

    Instance bad_vertex = k3_with_conflict();
    bad_vertex.edges.push_back({1, 9, 5});
    REQUIRE_FALSE(validate(bad_vertex).empty());
    REQUIRE(validate(bad_vertex)[0].rfind("BadVertexId:", 0) == 0);

    Instance self_loop = k3_with_conflict();
    self_loop.edges.push_back({2, 2, 5});
    REQUIRE(validate(self_loop)[0].rfind("SelfLoop:", 0) == 0);

    Instance unordered = k3_with_conflict();
    unordered.conflicts = {{1, 0}};
    REQUIRE(validate(unordered)[0].rfind("UnorderedConflictPair:", 0) == 0);

    Instance duplicated = k3_with_conflict();
    duplicated.conflicts = {{0, 1}, {0, 1}};
    REQUIRE(validate(duplicated)[0].rfind("DuplicateConflictPair:", 0) == 0);

    Instance self_pair = k3_with_conflict();
    self_pair.conflicts = {{1, 1}};
    REQUIRE(validate(self_pair)[0].rfind("DuplicateEdgeInPair:", 0) == 0);
}

TEST_CASE("validate accepts parallel edges", "[instance_io]")
{
    Instance inst;
    inst.vertex_count = 2;
    inst.edges = {{1, 2, 3}, {1, 2, 5}};
    REQUIRE(validate(inst).empty());
}

TEST_CASE("write then parse is the identity", "[instance_io]")
{
    const Instance inst = k3_with_conflict();
    REQUIRE(parse_instance(write_instance(inst)) == inst);
}

TEST_CASE("parallel edges survive the round trip", "[instance_io]")
{
    Instance inst;
    inst.name = "parallel";
    inst.vertex_count = 2;
    inst.edges = {{1, 2, 3}, {1, 2, 5}};
    inst.conflicts = {{0, 1}};
    const Instance back = parse_instance(write_instance(inst));
    REQUIRE(back == inst);
    REQUIRE(back.edges[0].cost == 3);
    REQUIRE(back.edges[1].cost == 5);
}

TEST_CASE("generated instances round trip", "[instance_io][property]")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        GeneratorSpec spec;
        spec.n = 4 + static_cast<long>(seed % 5);
        spec.m = spec.n + 2;
        spec.p = 3;
        spec.family = Family::Type2;
        spec.seed = seed;
        const Instance inst = generate_instance(spec);
        REQUIRE(parse_instance(write_instance(inst)) == inst);
    }
}

TEST_CASE("generator produces a connected conflict-free graph", "[generator]")
{
    GeneratorSpec spec;
    spec.n = 5;
    spec.m = 8;
    spec.p = 0;
    spec.family = Family::Type1;
    spec.seed = 7;
    const Instance inst = generate_instance(spec);
    REQUIRE(inst.vertex_count == 5);
    REQUIRE(inst.edge_count() == 8);
    REQUIRE(inst.conflicts.empty());
    REQUIRE(inst.name == "5-8-0");
    REQUIRE(validate(inst).empty());
}

TEST_CASE("seeded tree certifies feasibility of every type-2 instance",
          "[generator]")
{
    GeneratorSpec spec;
    spec.n = 5;
    spec.m = 8;
    spec.p = 5;
    spec.family = Family::Type2;
    spec.seed = 7;
    const Instance inst = generate_instance(spec);
    REQUIRE(inst.conflict_count() == 5);
    REQUIRE(validate(inst).empty());

    // the seeded tree is the first n-1 edges; no pair may lie inside it
    for (const auto& [a, b] : inst.conflicts)
        REQUIRE(b >= inst.vertex_count - 1);

    // and the oracle agrees the instance is feasible
    REQUIRE(brute_force_solve(inst).status == OracleResult::Status::Optimal);
}

TEST_CASE("type-2 stays feasible across many seeds", "[generator][property]")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        GeneratorSpec spec;
        spec.n = 6;
        spec.m = 10;
        spec.p = 8;
        spec.family = Family::Type2;
        spec.seed = seed;
        const Instance inst = generate_instance(spec);
        for (const auto& [a, b] : inst.conflicts)
            REQUIRE(b >= spec.n - 1);
        REQUIRE(brute_force_solve(inst).status == OracleResult::Status::Optimal);
    }
}

TEST_CASE("generator is deterministic for a fixed seed", "[generator]")
{
    GeneratorSpec spec;
    spec.n = 4;
    spec.m = 6;
    spec.p = 3;
    spec.family = Family::Type1;
    spec.seed = 1;
    const Instance first = generate_instance(spec);
    const Instance second = generate_instance(spec);
    REQUIRE(first == second);
    REQUIRE(write_instance(first) == write_instance(second));
    REQUIRE(first.conflict_count() == 3);
    // pairs are distinct by construction
    for (std::size_t i = 1; i < first.conflicts.size(); ++i)
        REQUIRE(first.conflicts[i - 1] < first.conflicts[i]);
}

TEST_CASE("generator rejects impossible requests", "[generator]")
{
    GeneratorSpec spec;
    spec.n = 4;
    spec.m = 2;     // m < n-1
    REQUIRE_THROWS_AS(generate_instance(spec), std::invalid_argument);

    spec.m = 7;     // beyond the simple graph capacity of 6
    REQUIRE_THROWS_AS(generate_instance(spec), std::invalid_argument);

    spec.m = 6;
    spec.p = 16;    // beyond m(m-1)/2
    REQUIRE_THROWS_AS(generate_instance(spec), std::invalid_argument);

    // type-2 exclusion shrinks the available pairs: with n=4, m=4 the seeded
    // tree occupies 3 of the 6 pairs, so p=4 cannot be met
    spec.m = 4;
    spec.p = 4;
    spec.family = Family::Type2;
    REQUIRE_THROWS_AS(generate_instance(spec), std::invalid_argument);

    spec.p = 3;
    REQUIRE_NOTHROW(generate_instance(spec));

    spec.p = 0;
    spec.cost_lo = 0;   // costs must be positive integers
    REQUIRE_THROWS_AS(generate_instance(spec), std::invalid_argument);

    spec.cost_lo = 5;
    spec.cost_hi = 4;   // empty range
    REQUIRE_THROWS_AS(generate_instance(spec), std::invalid_argument);
}

TEST_CASE("generator respects the cost range", "[generator][property]")
{
    GeneratorSpec spec;
    spec.n = 6;
    spec.m = 9;
    spec.p = 4;
    spec.cost_lo = 10;
    spec.cost_hi = 12;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        spec.seed = seed;
        for (const Edge& e : generate_instance(spec).edges)
        {
            REQUIRE(e.cost >= 10);
            REQUIRE(e.cost <= 12);
        }
    }
}
