#include "treq/dot.hpp"

#include <cctype>
#include <deque>
#include <vector>

namespace treq {

namespace {

std::string quoted(const std::string& s) { return '"' + s + '"'; }

}  // namespace

std::string emit_dot(const FiniteQuiver& q, const DotOptions& opts) {
  std::string out = "digraph " + quoted(opts.graph_name) + " {\n";
  out += "  rankdir=TB;\n";
  for (const std::string& v : q.vertices()) {
    out += "  " + quoted(v) + " [label=" + quoted(v);
    if (opts.highlight.count(v)) out += ", style=filled, fillcolor=lightgrey";
    out += "];\n";
  }
  std::map<int, std::vector<std::string>> groups;
  for (const std::string& v : q.vertices()) {
    auto it = opts.rank_of.find(v);
    if (it != opts.rank_of.end()) groups[it->second].push_back(v);
  }
  for (const auto& [rank, members] : groups) {
    out += "  { rank=same;";
    for (const std::string& v : members) out += ' ' + quoted(v) + ';';
    out += " }\n";
  }
  for (const Arrow& a : q.arrows())
    out += "  " + quoted(a.src) + " -> " + quoted(a.dst) + " [label=" + quoted(a.id) + "];\n";
  out += "}\n";
  return out;
}

std::map<std::string, int> depth_ranks(const FiniteQuiver& q) {
  std::map<std::string, int> depth;
  if (!q.root()) return depth;
  depth[*q.root()] = 0;
  std::deque<std::string> queue{*q.root()};
  while (!queue.empty()) {
    const std::string v = std::move(queue.front());
    queue.pop_front();
    for (int ai : q.arrows_from(v)) {
      const Arrow& a = q.arrows()[static_cast<std::size_t>(ai)];
      if (depth.emplace(a.dst, depth[v] + 1).second) queue.push_back(a.dst);
    }
  }
  return depth;
}

namespace {

// One quoted name: a double quote, any characters except quotes or
// backslashes, a closing quote.  Advances the cursor past it.
bool eat_quoted(const std::string& s, std::size_t& pos) {
  if (pos >= s.size() || s[pos] != '"') return false;
  for (std::size_t i = pos + 1; i < s.size(); ++i) {
    if (s[i] == '\\') return false;
    if (s[i] == '"') {
      pos = i + 1;
      return true;
    }
  }
  return false;
}

bool eat_exact(const std::string& s, std::size_t& pos, const std::string& token) {
  if (s.compare(pos, token.size(), token) != 0) return false;
  pos += token.size();
  return true;
}

void eat_spaces(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && s[pos] == ' ') ++pos;
}

bool valid_attr_list(const std::string& s, std::size_t& pos) {
  if (!eat_exact(s, pos, "[")) return false;
  while (true) {
    eat_spaces(s, pos);
    std::size_t key = pos;
    while (key < s.size() && (std::isalnum(static_cast<unsigned char>(s[key])) != 0)) ++key;
    if (key == pos) return false;
    pos = key;
    if (!eat_exact(s, pos, "=")) return false;
    if (pos < s.size() && s[pos] == '"') {
      if (!eat_quoted(s, pos)) return false;
    } else {
      std::size_t value = pos;
      while (value < s.size() && (std::isalnum(static_cast<unsigned char>(s[value])) != 0))
        ++value;
      if (value == pos) return false;
      pos = value;
    }
    if (eat_exact(s, pos, "]")) return true;
    if (!eat_exact(s, pos, ",")) return false;
  }
}

bool valid_statement(const std::string& line) {
  std::size_t pos = 0;
  eat_spaces(line, pos);
  if (eat_exact(line, pos, "rankdir=TB;")) return pos == line.size();
  if (line.compare(pos, 1, "{") == 0) {
    // rank group: { rank=same; "a"; "b"; }
    ++pos;
    eat_spaces(line, pos);
    if (!eat_exact(line, pos, "rank=same;")) return false;
    while (true) {
      eat_spaces(line, pos);
      if (eat_exact(line, pos, "}")) return pos == line.size();
      if (!eat_quoted(line, pos)) return false;
      if (!eat_exact(line, pos, ";")) return false;
    }
  }
  if (!eat_quoted(line, pos)) return false;
  eat_spaces(line, pos);
  if (eat_exact(line, pos, "-> ")) {
    if (!eat_quoted(line, pos)) return false;
    eat_spaces(line, pos);
  }
  if (pos < line.size() && line[pos] == '[') {
    if (!valid_attr_list(line, pos)) return false;
  }
  return eat_exact(line, pos, ";") && pos == line.size();
}

}  // namespace

bool dot_is_valid(const std::string& text) {
  if (text.empty() || text.back() != '\n') return false;
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      lines.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (lines.size() < 2) return false;
  std::size_t pos = 0;
  const std::string& head = lines.front();
  if (!eat_exact(head, pos, "digraph ")) return false;
  if (!eat_quoted(head, pos)) return false;
  if (!eat_exact(head, pos, " {") || pos != head.size()) return false;
  if (lines.back() != "}") return false;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i)
    if (!valid_statement(lines[i])) return false;
  return true;
}

}  // namespace treq
