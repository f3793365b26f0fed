#pragma once

/// Text format for instances.
///
/// Lines starting with '#' are comments; a comment "# name: <id>" before the
/// header overrides the default instance name "n-m-p". The first data line
/// is the header "n m p", followed by m edge lines "u v cost" (1-based
/// vertex ids) and p conflict lines "i j" (1-based edge positions).
/// UTF-8, LF line endings.

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"

namespace mstcc {

struct ParseError : std::runtime_error
{
    long line;

    ParseError(long line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
          line(line_no)
    {
    }
};

namespace detail {

struct LineReader
{
    std::istream& in;
    long line_no = 0;
    std::string pending_name;

    explicit LineReader(std::istream& stream) : in(stream) {}

    /// Next data line with comments stripped; false at end of input.
    /// A "# name:" comment is remembered for the instance name.
    bool next(std::string& out)
    {
        std::string raw;
        while (std::getline(in, raw))
        {
            ++line_no;
            if (!raw.empty() && raw.back() == '\r')
                raw.pop_back();
            const auto hash = raw.find('#');
            if (hash != std::string::npos)
            {
                const std::string comment = raw.substr(hash + 1);
                const auto key = comment.find("name:");
                if (key != std::string::npos)
                {
                    std::string value = comment.substr(key + 5);
                    const auto first = value.find_first_not_of(" \t");
                    const auto last = value.find_last_not_of(" \t");
                    if (first != std::string::npos)
                        pending_name = value.substr(first, last - first + 1);
                }
                raw.erase(hash);
            }
            if (raw.find_first_not_of(" \t") == std::string::npos)
                continue;
            out = raw;
            return true;
        }
        return false;
    }
};

template <typename... Fields>
void scan_fields(const std::string& text, long line_no, const char* what,
                 Fields&... fields)
{
    std::istringstream scan(text);
    ((scan >> fields), ...);
    if (scan.fail())
        throw ParseError(line_no, std::string("malformed ") + what);
    std::string extra;
    if (scan >> extra)
        throw ParseError(line_no, std::string("trailing data after ") + what);
}

}  // namespace detail

inline Instance parse_instance(std::istream& in)
{
    detail::LineReader reader(in);
    std::string line;

    if (!reader.next(line))
        throw ParseError(reader.line_no, "missing header");
    long n = 0, m = 0, p = 0;
    detail::scan_fields(line, reader.line_no, "header (expected \"n m p\")", n, m, p);
    if (n < 1)
        throw ParseError(reader.line_no, "vertex count must be positive");
    if (m < 0 || p < 0)
        throw ParseError(reader.line_no, "negative count in header");

    Instance inst;
    inst.vertex_count = n;
    inst.edges.reserve(static_cast<std::size_t>(m));

    for (long i = 0; i < m; ++i)
    {
        if (!reader.next(line))
            throw ParseError(reader.line_no, "expected " + std::to_string(m - i)
                                                 + " more edge line(s)");
        Edge e;
        detail::scan_fields(line, reader.line_no, "edge line (expected \"u v cost\")",
                            e.u, e.v, e.cost);
        if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
            throw ParseError(reader.line_no, "vertex id out of range");
        if (e.u == e.v)
            throw ParseError(reader.line_no, "self-loop edge");
        inst.edges.push_back(e);
    }

    std::set<ConflictPair> seen_pairs;
    for (long k = 0; k < p; ++k)
    {
        if (!reader.next(line))
            throw ParseError(reader.line_no, "expected " + std::to_string(p - k)
                                                 + " more conflict line(s)");
        long a = 0, b = 0;
        detail::scan_fields(line, reader.line_no, "conflict line (expected \"i j\")",
                            a, b);
        if (a < 1 || a > m || b < 1 || b > m)
            throw ParseError(reader.line_no, "edge index out of range");
        if (a == b)
            throw ParseError(reader.line_no, "conflict pair repeats an edge");
        ConflictPair pair{std::min(a, b) - 1, std::max(a, b) - 1};
        if (!seen_pairs.insert(pair).second)
            throw ParseError(reader.line_no, "duplicate conflict pair");
        inst.conflicts.push_back(pair);
    }

    if (reader.next(line))
        throw ParseError(reader.line_no, "unexpected trailing data");

    inst.name = reader.pending_name.empty()
                    ? std::to_string(n) + "-" + std::to_string(m) + "-" + std::to_string(p)
                    : reader.pending_name;
    return inst;
}

inline Instance parse_instance(const std::string& text)
{
    std::istringstream in(text);
    return parse_instance(in);
}

inline std::string write_instance(const Instance& inst)
{
    std::ostringstream out;
    out << "# name: " << inst.name << "\n";
    out << inst.vertex_count << " " << inst.edge_count() << " "
        << inst.conflict_count() << "\n";
    for (const Edge& e : inst.edges)
        out << e.u << " " << e.v << " " << e.cost << "\n";
    for (const auto& [a, b] : inst.conflicts)
        out << a + 1 << " " << b + 1 << "\n";
    return out.str();
}

inline Instance read_instance_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open instance file: " + path);
    return parse_instance(in);
}

inline void write_instance_file(const Instance& inst, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write instance file: " + path);
    out << write_instance(inst);
}

}  // namespace mstcc
