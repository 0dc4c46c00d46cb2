#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "spectre/graph.hpp"

namespace spectre {

class GraphParseError : public std::runtime_error {
public:
    GraphParseError(int line, const std::string& message);
    int line() const noexcept { return line_; }

private:
    int line_;
};

/**
 * Text format: a header line `n m`, then m lines `u v [w]` with 1-indexed
 * vertices and w defaulting to 1. `u u w` is a loop of weight w. Repeated
 * pairs are summed. Blank lines and lines starting with '#' are skipped.
 */
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);

/// Canonical writer: pairs in ascending order, weights with 12 significant digits.
void write_graph(std::ostream& out, const WeightedGraph& g);
void write_graph_file(const std::string& path, const WeightedGraph& g);

}  // namespace spectre
