#include "spectre/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace spectre {

GraphParseError::GraphParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

bool skip(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

// Whole-line parse; trailing garbage is an error.
template <class... T>
bool parse_fields(const std::string& line, T&... fields) {
    std::istringstream ss(line);
    ((ss >> fields), ...);
    if (ss.fail()) return false;
    ss >> std::ws;
    return ss.eof();
}

}  // namespace

WeightedGraph read_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    long n = -1;
    long m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip(line)) continue;
        if (!parse_fields(line, n, m) || n < 0 || m < 0) throw GraphParseError(lineno, "expected header `n m`");
        break;
    }
    if (n < 0) throw GraphParseError(lineno, "missing header `n m`");

    WeightedGraph g(static_cast<int>(n));
    long seen = 0;
    while (seen < m && std::getline(in, line)) {
        ++lineno;
        if (skip(line)) continue;
        long u = 0;
        long v = 0;
        double w = 1.0;
        if (!parse_fields(line, u, v) && !parse_fields(line, u, v, w)) {
            throw GraphParseError(lineno, "expected `u v [w]`");
        }
        if (u < 1 || u > n || v < 1 || v > n) throw GraphParseError(lineno, "vertex out of range 1.." + std::to_string(n));
        if (!std::isfinite(w)) throw GraphParseError(lineno, "weight is not finite");
        g.add_weight(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w);
        ++seen;
    }
    if (seen < m) throw GraphParseError(lineno, "expected " + std::to_string(m) + " edges, found " + std::to_string(seen));
    while (std::getline(in, line)) {
        ++lineno;
        if (!skip(line)) throw GraphParseError(lineno, "more edge lines than declared");
    }
    return g;
}

WeightedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << g.order() << ' ' << g.size() << '\n';
    const auto old = out.precision(12);
    for (const auto& [key, w] : g.weights()) out << key.first + 1 << ' ' << key.second + 1 << ' ' << w << '\n';
    out.precision(old);
}

void write_graph_file(const std::string& path, const WeightedGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_graph(out, g);
}

}  // namespace spectre
