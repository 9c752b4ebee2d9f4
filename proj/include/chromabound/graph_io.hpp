#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chromabound/graph.hpp"
#include "json.hpp"

namespace chromabound {

// graph6 as documented with nauty. A leading ">>graph6<<" header and a
// trailing newline are accepted. Throws ParseError with the byte offset.
Graph parse_graph6(std::string_view text);
std::string encode_graph6(const Graph& g);

// DIMACS edge format ("c", "p edge n m", "e u v" with 1-based vertices).
// Duplicate and reversed edges are merged. A mismatch between the declared
// and actual edge count is reported through `warnings`, not thrown.
Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string encode_dimacs(const Graph& g);

// {"name": ..., "n": ..., "edges": [[u, v], ...]}
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);

}  // namespace chromabound
