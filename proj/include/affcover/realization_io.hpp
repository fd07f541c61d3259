#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "affcover/geom.hpp"
#include "affcover/graph_io.hpp"

namespace affcover {

template <class S>
Realization<S> parse_realization(std::string_view text) {
  Realization<S> r;
  int dim = 0;
  std::map<long long, Point<S>> vs;
  std::map<long long, Line<S>> ls;
  std::vector<std::tuple<long long, long long, long long, int>> as;
  auto scalar = [](std::string_view t, int ln) {
    try {
      return ScalarTraits<S>::parse(t);
    } catch (const Error&) {
      io::fail(ln, "bad coordinate '" + std::string(t) + "'");
    }
  };
  io::for_each_record(text, [&](int ln, const std::vector<std::string_view>& t) {
    if (t[0] == "v") {
      int d = static_cast<int>(t.size()) - 2;
      if (d != 2 && d != 3) io::fail(ln, "vertex must be 'v <id> <x> <y> [<z>]'");
      if (dim == 0) dim = d;
      if (d != dim) io::fail(ln, "mixed dimensions");
      long long id = io::parse_int(t[1], ln);
      Point<S> p;
      for (int i = 0; i < d; ++i) p.c.push_back(scalar(t[2 + i], ln));
      if (!vs.emplace(id, std::move(p)).second) io::fail(ln, "duplicate vertex id");
    } else if (t[0] == "l") {
      int d = (static_cast<int>(t.size()) - 2) / 2;
      if ((d != 2 && d != 3) || static_cast<int>(t.size()) != 2 + 2 * d)
        io::fail(ln, "line must be 'l <id> <x1> <y1> [<z1>] <x2> <y2> [<z2>]'");
      if (dim == 0) dim = d;
      if (d != dim) io::fail(ln, "mixed dimensions");
      long long id = io::parse_int(t[1], ln);
      Line<S> l;
      for (int i = 0; i < d; ++i) l.p.c.push_back(scalar(t[2 + i], ln));
      for (int i = 0; i < d; ++i) l.q.c.push_back(scalar(t[2 + d + i], ln));
      if (!ls.emplace(id, std::move(l)).second) io::fail(ln, "duplicate line id");
    } else if (t[0] == "a") {
      if (t.size() != 4) io::fail(ln, "assignment must be 'a <u> <v> <line-id>'");
      as.emplace_back(io::parse_int(t[1], ln), io::parse_int(t[2], ln), io::parse_int(t[3], ln), ln);
    } else {
      io::fail(ln, "unknown record '" + std::string(t[0]) + "'");
    }
  });
  r.dim = dim == 0 ? 2 : dim;
  long long expect = 1;
  for (auto& [id, p] : vs) {
    if (id != expect++) throw Error(ErrorCode::ParseError, "vertex ids must be 1..n without gaps");
    r.positions.push_back(std::move(p));
  }
  expect = 1;
  for (auto& [id, l] : ls) {
    if (id != expect++) throw Error(ErrorCode::ParseError, "line ids must be 1..k without gaps");
    r.lines.push_back(std::move(l));
  }
  for (auto [u, v, li, ln] : as) {
    long long n = static_cast<long long>(r.positions.size());
    if (u < 1 || v < 1 || u > n || v > n || u == v) io::fail(ln, "bad edge in assignment");
    if (li < 1 || li > static_cast<long long>(r.lines.size())) io::fail(ln, "unknown line id");
    Edge e(static_cast<int>(u - 1), static_cast<int>(v - 1));
    if (!r.assignment.emplace(e, static_cast<int>(li - 1)).second) io::fail(ln, "edge assigned twice");
  }
  return r;
}

template <class S>
std::string write_realization(const Realization<S>& r) {
  std::ostringstream os;
  for (size_t v = 0; v < r.positions.size(); ++v) {
    os << "v " << v + 1;
    for (const auto& x : r.positions[v].c) os << ' ' << format(x);
    os << '\n';
  }
  for (size_t i = 0; i < r.lines.size(); ++i) {
    os << "l " << i + 1;
    for (const auto& x : r.lines[i].p.c) os << ' ' << format(x);
    for (const auto& x : r.lines[i].q.c) os << ' ' << format(x);
    os << '\n';
  }
  for (const auto& [e, li] : r.assignment) os << "a " << e.u + 1 << ' ' << e.v + 1 << ' ' << li + 1 << '\n';
  return os.str();
}

}  // namespace affcover
