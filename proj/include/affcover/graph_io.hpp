#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "affcover/error.hpp"
#include "affcover/graph.hpp"

namespace affcover {

namespace io {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] inline void fail(int line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

inline long long parse_int(std::string_view tok, int line_no) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail(line_no, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

// Calls fn(line_no, tokens) for every non-blank, non-comment line.
template <class Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    auto toks = split_ws(text.substr(pos, nl - pos));
    if (!toks.empty() && toks[0] != "c" && toks[0][0] != '#') fn(line_no, toks);
    pos = nl + 1;
  }
}

}  // namespace io

// Parses the shared graph format. `extra` receives records other than p/e
// (used by the factorized-graph reader); unknown records are errors otherwise.
template <class Extra>
Graph parse_graph_with(std::string_view text, Extra&& extra) {
  Graph g;
  bool have_header = false;
  long long declared_m = 0;
  io::for_each_record(text, [&](int ln, const std::vector<std::string_view>& t) {
    if (t[0] == "p") {
      if (have_header) io::fail(ln, "duplicate header");
      if (t.size() != 3) io::fail(ln, "header must be 'p <n> <m>'");
      long long n = io::parse_int(t[1], ln);
      declared_m = io::parse_int(t[2], ln);
      if (n < 0 || declared_m < 0 || n > 100000000) io::fail(ln, "bad header counts");
      g = Graph(static_cast<int>(n));
      have_header = true;
    } else if (t[0] == "e") {
      if (!have_header) io::fail(ln, "edge before header");
      if (t.size() != 3) io::fail(ln, "edge must be 'e <u> <v>'");
      long long u = io::parse_int(t[1], ln), v = io::parse_int(t[2], ln);
      if (u < 1 || v < 1 || u > g.order() || v > g.order())
        io::fail(ln, "vertex id out of range 1.." + std::to_string(g.order()));
      try {
        g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
      } catch (const Error& e) {
        throw Error(e.code(), "line " + std::to_string(ln) + ": " +
                                  (e.code() == ErrorCode::SelfLoop ? "self-loop" : "duplicate edge") +
                                  " " + std::to_string(u) + "-" + std::to_string(v));
      }
    } else if (!extra(ln, t, have_header)) {
      io::fail(ln, "unknown record '" + std::string(t[0]) + "'");
    }
  });
  if (!have_header) throw Error(ErrorCode::ParseError, "missing header 'p <n> <m>'");
  if (g.size() != declared_m)
    throw Error(ErrorCode::ParseError, "header declares " + std::to_string(declared_m) +
                                           " edges but " + std::to_string(g.size()) + " were given");
  return g;
}

inline Graph parse_graph(std::string_view text) {
  return parse_graph_with(text, [](int, const std::vector<std::string_view>&, bool) { return false; });
}

inline std::string write_graph(const Graph& g) {
  std::ostringstream os;
  os << "p " << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) os << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return os.str();
}

}  // namespace affcover
