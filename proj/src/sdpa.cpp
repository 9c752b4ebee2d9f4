#include "chromabound/sdpa.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "chromabound/errors.hpp"

namespace chromabound {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostringstream& os, int matno, const SparseBlockMatrix& m, double sign) {
  for (const auto& e : m) {
    if (e.value == 0) continue;
    os << matno << ' ' << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' '
       << fmt(sign * e.value) << '\n';
  }
}

}  // namespace

std::string export_sdpa_sparse(const SdpProblem& problem, std::string_view comment) {
  problem.validate();
  std::ostringstream os;
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string line; std::getline(lines, line);) os << "\" " << line << '\n';
  }
  os << problem.num_constraints() << " = mDIM\n";
  os << problem.blocks.size() << " = nBLOCK\n";
  for (std::size_t k = 0; k < problem.blocks.size(); ++k)
    os << (k ? " " : "") << problem.blocks[k];
  os << " = bLOCKsTRUCT\n";
  for (std::size_t i = 0; i < problem.rhs.size(); ++i) os << (i ? " " : "") << fmt(problem.rhs[i]);
  os << '\n';
  write_matrix(os, 0, problem.objective, -1.0);
  for (int i = 0; i < problem.num_constraints(); ++i)
    write_matrix(os, i + 1, problem.constraints[i], 1.0);
  return os.str();
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view t) : t_(t) {}

  // Skips comments and separators. Returns false at end of input.
  bool skip() {
    while (pos_ < t_.size()) {
      char c = t_[pos_];
      if ((c == '"' || c == '*') && at_line_start()) {
        while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',' || c == '{' ||
                 c == '}' || c == '(' || c == ')') {
        ++pos_;
      } else if (c == '=') {
        // "= mDIM" style trailers run to the end of the line.
        while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
      } else {
        return true;
      }
    }
    return false;
  }

  double number(const char* what) {
    if (!skip()) throw ParseError(std::string("sdpa: unexpected end of input, expected ") + what, pos_);
    std::size_t start = pos_;
    while (pos_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[pos_])) &&
           t_[pos_] != ',' && t_[pos_] != '}' && t_[pos_] != ')')
      ++pos_;
    std::string tok(t_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size())
      throw ParseError("sdpa: expected " + std::string(what) + ", got '" + tok + "'", start);
    last_ = start;
    return v;
  }

  int integer(const char* what) {
    double v = number(what);
    if (v != static_cast<int>(v))
      throw ParseError("sdpa: expected integer " + std::string(what), last_);
    return static_cast<int>(v);
  }

  std::size_t last() const { return last_; }

 private:
  bool at_line_start() const {
    std::size_t i = pos_;
    while (i > 0 && (t_[i - 1] == ' ' || t_[i - 1] == '\t')) --i;
    return i == 0 || t_[i - 1] == '\n';
  }

  std::string_view t_;
  std::size_t pos_ = 0;
  std::size_t last_ = 0;
};

}  // namespace

SdpProblem parse_sdpa_sparse(std::string_view text) {
  Scanner s(text);
  SdpProblem p;
  const int m = s.integer("mDIM");
  if (m < 0) throw ParseError("sdpa: negative constraint count", s.last());
  const int nb = s.integer("nBLOCK");
  if (nb < 1) throw ParseError("sdpa: need at least one block", s.last());
  for (int k = 0; k < nb; ++k) {
    int size = s.integer("block size");
    if (size == 0) throw ParseError("sdpa: block size 0", s.last());
    p.blocks.push_back(size);
  }
  for (int i = 0; i < m; ++i) p.rhs.push_back(s.number("objective coefficient"));
  p.constraints.assign(m, {});
  while (s.skip()) {
    const int matno = s.integer("matrix number");
    const std::size_t at = s.last();
    const int blk = s.integer("block number");
    const int row = s.integer("row");
    const int col = s.integer("column");
    const double value = s.number("value");
    if (matno < 0 || matno > m) throw ParseError("sdpa: matrix number out of range", at);
    if (blk < 1 || blk > nb) throw ParseError("sdpa: block number out of range", at);
    const int d = p.block_dim(blk - 1);
    if (row < 1 || col < 1 || row > d || col > d) throw ParseError("sdpa: index out of range", at);
    SparseEntry e{blk - 1, std::min(row, col) - 1, std::max(row, col) - 1, value};
    if (p.is_diagonal(e.block) && e.row != e.col)
      throw ParseError("sdpa: off-diagonal entry in diagonal block", at);
    if (matno == 0) {
      e.value = -e.value;
      p.objective.push_back(e);
    } else {
      p.constraints[matno - 1].push_back(e);
    }
  }
  return p;
}

}  // namespace chromabound
