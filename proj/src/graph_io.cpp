#include "chromabound/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chromabound/errors.hpp"

namespace chromabound {

namespace {

constexpr int kBias = 63;

int decode_char(std::string_view text, std::size_t pos) {
  unsigned char ch = static_cast<unsigned char>(text[pos]);
  if (ch < 63 || ch > 126)
    throw ParseError("graph6: character outside the range 63..126", pos);
  return ch - kBias;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) pos = header.size();
  std::size_t end = text.size();
  while (end > pos && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;
  if (pos >= end) throw ParseError("graph6: empty input", pos);

  auto need = [&](std::size_t k) {
    if (pos + k > end) throw ParseError("graph6: truncated header", end);
  };

  long long n = 0;
  if (text[pos] != '~') {
    n = decode_char(text, pos);
    pos += 1;
  } else if (pos + 1 < end && text[pos + 1] == '~') {
    need(8);
    for (std::size_t k = 2; k < 8; ++k) n = (n << 6) | decode_char(text, pos + k);
    pos += 8;
  } else {
    need(4);
    for (std::size_t k = 1; k < 4; ++k) n = (n << 6) | decode_char(text, pos + k);
    pos += 4;
  }
  if (n > 100000) throw ParseError("graph6: vertex count too large", pos);

  const long long bits = n * (n - 1) / 2;
  const long long bytes = (bits + 5) / 6;
  if (static_cast<long long>(end - pos) < bytes)
    throw ParseError("graph6: truncated bit stream", end);
  if (static_cast<long long>(end - pos) > bytes)
    throw ParseError("graph6: trailing data after bit stream", pos + bytes);

  std::vector<Edge> edges;
  long long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      std::size_t at = pos + static_cast<std::size_t>(k / 6);
      int value = decode_char(text, at);
      if (value >> (5 - k % 6) & 1) edges.emplace_back(i, j);
    }
  }
  // Padding bits must be zero.
  if (bits % 6 != 0) {
    std::size_t at = pos + static_cast<std::size_t>(bytes - 1);
    int value = decode_char(text, at);
    int pad = static_cast<int>(6 - bits % 6);
    if (value & ((1 << pad) - 1)) throw ParseError("graph6: non-zero padding bits", at);
  }
  return Graph(static_cast<int>(n), edges);
}

std::string encode_graph6(const Graph& g) {
  const long long n = g.num_vertices();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + kBias));
  } else {
    out += "~~";
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + kBias));
  }
  int acc = 0, filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kBias));
  return out;
}

Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
  long long n = -1, declared_m = -1;
  std::vector<Edge> edges;
  std::size_t line_start = 0;
  std::size_t edge_lines = 0;

  auto parse_int = [&](std::string_view tok, std::size_t offset) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError("dimacs: expected integer, got '" + std::string(tok) + "'", offset);
    return v;
  };

  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);

    // Tokenize on whitespace, remembering each token's offset.
    std::vector<std::pair<std::string_view, std::size_t>> toks;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t s = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > s) toks.emplace_back(line.substr(s, i - s), line_start + s);
    }

    if (!toks.empty() && toks[0].first != "c") {
      if (toks[0].first == "p") {
        if (n >= 0) throw ParseError("dimacs: duplicate problem line", toks[0].second);
        if (toks.size() != 4) throw ParseError("dimacs: malformed problem line", toks[0].second);
        n = parse_int(toks[2].first, toks[2].second);
        declared_m = parse_int(toks[3].first, toks[3].second);
        if (n < 0 || n > 100000) throw ParseError("dimacs: bad vertex count", toks[2].second);
      } else if (toks[0].first == "e") {
        if (n < 0) throw ParseError("dimacs: edge line before problem line", toks[0].second);
        if (toks.size() != 3) throw ParseError("dimacs: malformed edge line", toks[0].second);
        long long u = parse_int(toks[1].first, toks[1].second);
        long long v = parse_int(toks[2].first, toks[2].second);
        if (u < 1 || u > n) throw ParseError("dimacs: edge endpoint out of range", toks[1].second);
        if (v < 1 || v > n) throw ParseError("dimacs: edge endpoint out of range", toks[2].second);
        ++edge_lines;
        if (u == v) {
          if (warnings) warnings->push_back("dimacs: ignoring self-loop on vertex " + std::to_string(u));
        } else {
          edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
        }
      } else {
        throw ParseError("dimacs: unknown line type '" + std::string(toks[0].first) + "'",
                         toks[0].second);
      }
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  if (n < 0) throw ParseError("dimacs: missing problem line", text.size());
  Graph g(static_cast<int>(n), edges);
  if (warnings && declared_m >= 0 && static_cast<std::size_t>(declared_m) != edge_lines)
    warnings->push_back("dimacs: problem line declares " + std::to_string(declared_m) +
                        " edges but " + std::to_string(edge_lines) + " edge lines were read");
  return g;
}

std::string encode_dimacs(const Graph& g) {
  std::ostringstream os;
  if (!g.name().empty()) os << "c " << g.name() << "\n";
  os << "p edge " << g.num_vertices() << " " << g.num_edges() << "\n";
  for (auto [u, v] : g.edges()) os << "e " << u + 1 << " " << v + 1 << "\n";
  return os.str();
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"name", g.name()}, {"n", g.num_vertices()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return Graph(j.at("n").get<int>(), edges, j.value("name", std::string{}));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace chromabound
