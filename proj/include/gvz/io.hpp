#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "group.hpp"

namespace gvz {

namespace detail {

/// Lines of a text blob with comments ('#' to end of line) and blank lines
/// removed; .second is the original 1-based line number.
inline std::vector<std::pair<std::string, int>> content_lines(
    const std::string& text) {
  std::vector<std::pair<std::string, int>> out;
  std::istringstream ss(text);
  std::string line;
  int no = 0;
  while (std::getline(ss, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) out.emplace_back(line, no);
  }
  return out;
}

inline std::vector<long long> int_tokens(const std::string& line, int lineno) {
  std::istringstream ss(line);
  std::vector<long long> out;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw MalformedFile("line " + std::to_string(lineno) +
                          ": expected integer, got '" + tok + "'");
    }
  }
  return out;
}

}  // namespace detail

/// Multiplication-table format: first content line is the order n, followed
/// by n lines of n entries (0-based element indices).
inline Group group_from_table_text(const std::string& text, std::string name,
                                   const Limits& lim = {}) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw MalformedFile("empty input");
  auto head = detail::int_tokens(lines[0].first, lines[0].second);
  if (head.size() != 1)
    throw MalformedFile("line " + std::to_string(lines[0].second) +
                        ": expected a single group order");
  long long n = head[0];
  if (n < 1 || n > lim.order_cap)
    throw OrderCapExceeded("group order " + std::to_string(n) +
                           " outside [1," + std::to_string(lim.order_cap) + "]");
  if (static_cast<long long>(lines.size()) != n + 1)
    throw MalformedFile("expected " + std::to_string(n) + " table rows, got " +
                        std::to_string(lines.size() - 1));
  std::vector<int> mul;
  mul.reserve(static_cast<std::size_t>(n) * n);
  for (long long r = 0; r < n; ++r) {
    auto row = detail::int_tokens(lines[r + 1].first, lines[r + 1].second);
    if (static_cast<long long>(row.size()) != n)
      throw MalformedFile("line " + std::to_string(lines[r + 1].second) +
                          ": expected " + std::to_string(n) + " entries, got " +
                          std::to_string(row.size()));
    for (long long v : row) {
      if (v < 0 || v >= n)
        throw MalformedFile("line " + std::to_string(lines[r + 1].second) +
                            ": entry " + std::to_string(v) +
                            " out of range [0," + std::to_string(n) + ")");
      mul.push_back(static_cast<int>(v));
    }
  }
  return Group::from_table(static_cast<int>(n), std::move(mul), std::move(name),
                           lim);
}

/// Closure of a set of permutations of {0..degree-1} under composition.
/// Product convention: mul(a, b) applies a first, then b.  Elements are
/// indexed in breadth-first discovery order starting from the identity.
inline Group group_from_permutations(int degree,
                                     const std::vector<std::vector<int>>& gens,
                                     std::string name, const Limits& lim = {}) {
  if (degree < 1) throw NotAPermutation("degree must be at least 1");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    if (static_cast<int>(g.size()) != degree)
      throw NotAPermutation("generator " + std::to_string(i) + " has " +
                            std::to_string(g.size()) + " images, expected " +
                            std::to_string(degree));
    std::vector<char> seen(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree)
        throw NotAPermutation("generator " + std::to_string(i) +
                              ": image " + std::to_string(v) +
                              " out of range [0," + std::to_string(degree) + ")");
      if (seen[v])
        throw NotAPermutation("generator " + std::to_string(i) +
                              ": image " + std::to_string(v) + " repeated");
      seen[v] = 1;
    }
  }
  std::vector<std::vector<int>> elems;
  std::map<std::vector<int>, int> index;
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  elems.push_back(id);
  index.emplace(id, 0);
  auto compose = [degree](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(degree);
    for (int i = 0; i < degree; ++i) c[i] = b[a[i]];
    return c;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      auto p = compose(elems[i], g);
      if (index.emplace(p, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(p));
        if (static_cast<int>(elems.size()) > lim.order_cap)
          throw OrderCapExceeded("permutation closure exceeds cap " +
                                 std::to_string(lim.order_cap));
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      mul[static_cast<std::size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
  return Group(n, std::move(mul), std::move(name), Group::Check::trusted);
}

/// Generator format: first content line is the degree, each following line
/// lists the images 0..degree-1 of one generator.
inline Group group_from_permutation_text(const std::string& text,
                                         std::string name,
                                         const Limits& lim = {}) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw MalformedFile("empty input");
  auto head = detail::int_tokens(lines[0].first, lines[0].second);
  if (head.size() != 1)
    throw MalformedFile("line " + std::to_string(lines[0].second) +
                        ": expected a single degree");
  long long d = head[0];
  if (d < 1 || d > 100000)
    throw MalformedFile("degree " + std::to_string(d) + " out of range");
  std::vector<std::vector<int>> gens;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto row = detail::int_tokens(lines[r].first, lines[r].second);
    if (static_cast<long long>(row.size()) != d)
      throw MalformedFile("line " + std::to_string(lines[r].second) +
                          ": expected " + std::to_string(d) + " images, got " +
                          std::to_string(row.size()));
    std::vector<int> g;
    g.reserve(row.size());
    for (long long v : row) g.push_back(static_cast<int>(v));
    gens.push_back(std::move(g));
  }
  return group_from_permutations(static_cast<int>(d), gens, std::move(name), lim);
}

enum class SourceFormat { auto_detect, table, permutations };

/// Reads a group from text, detecting the format when asked to: the input is
/// treated as a multiplication table when the first line holds a single
/// integer n followed by exactly n lines of n entries, otherwise as a list of
/// permutation generators.
inline Group group_from_text(const std::string& text, std::string name,
                             SourceFormat fmt = SourceFormat::auto_detect,
                             const Limits& lim = {}) {
  if (fmt == SourceFormat::table)
    return group_from_table_text(text, std::move(name), lim);
  if (fmt == SourceFormat::permutations)
    return group_from_permutation_text(text, std::move(name), lim);
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw MalformedFile("empty input");
  auto head = detail::int_tokens(lines[0].first, lines[0].second);
  bool table_shape = false;
  if (head.size() == 1 && head[0] >= 1 &&
      static_cast<long long>(lines.size()) == head[0] + 1) {
    table_shape = true;
    for (std::size_t r = 1; r < lines.size() && table_shape; ++r)
      table_shape =
          static_cast<long long>(detail::int_tokens(lines[r].first, lines[r].second)
                                     .size()) == head[0];
  }
  if (table_shape) return group_from_table_text(text, std::move(name), lim);
  return group_from_permutation_text(text, std::move(name), lim);
}

inline Group group_from_file(const std::string& path,
                             SourceFormat fmt = SourceFormat::auto_detect,
                             const Limits& lim = {}) {
  std::ifstream in(path);
  if (!in) throw MalformedFile("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos)
    name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0)
    name = name.substr(0, dot);
  try {
    return group_from_text(buf.str(), name, fmt, lim);
  } catch (MalformedFile& e) {
    throw MalformedFile(path + ": " + e.what());
  }
}

/// Writer for the table format; output re-ingests to the same group.
inline std::string to_table_text(const Group& G) {
  std::ostringstream out;
  out << "# group " << G.name() << "\n" << G.order() << "\n";
  for (int a = 0; a < G.order(); ++a) {
    for (int b = 0; b < G.order(); ++b) out << (b ? " " : "") << G.mul(a, b);
    out << "\n";
  }
  return out.str();
}

}  // namespace gvz
