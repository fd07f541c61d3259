#pragma once

#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <unistd.h>
#include <vector>

#include "affcover/error.hpp"
#include "affcover/scalar.hpp"

namespace affcover {

enum class SolverStatus { Sat, Unsat, Unknown };

struct SolverResult {
  SolverStatus status = SolverStatus::Unknown;
  // value per variable; nullopt for values that are not rational (root-obj etc.)
  std::map<std::string, std::optional<Rational>> model;
  std::string raw;
};

// Command used for the external solver: explicit value, else $AFFCOVER_SOLVER.
inline std::optional<std::string> solver_command(const std::optional<std::string>& explicit_cmd = std::nullopt) {
  if (explicit_cmd && !explicit_cmd->empty()) return explicit_cmd;
  if (const char* e = std::getenv("AFFCOVER_SOLVER"); e && *e) return std::string(e);
  return std::nullopt;
}

namespace detail {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

inline std::vector<SExpr> parse_sexprs(const std::string& s, size_t pos = 0) {
  std::vector<SExpr> stack(1);
  stack[0].is_list = true;
  while (pos < s.size()) {
    char ch = s[pos];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
    } else if (ch == '(') {
      SExpr e;
      e.is_list = true;
      stack.push_back(e);
      ++pos;
    } else if (ch == ')') {
      if (stack.size() < 2) throw Error(ErrorCode::SolverProtocolError, "unbalanced parenthesis in solver output");
      SExpr done = std::move(stack.back());
      stack.pop_back();
      stack.back().list.push_back(std::move(done));
      ++pos;
    } else if (ch == '"') {
      size_t end = s.find('"', pos + 1);
      if (end == std::string::npos) throw Error(ErrorCode::SolverProtocolError, "unterminated string in solver output");
      stack.back().list.push_back(SExpr{s.substr(pos, end - pos + 1), {}, false});
      pos = end + 1;
    } else {
      size_t end = pos;
      while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])) && s[end] != '(' && s[end] != ')') ++end;
      stack.back().list.push_back(SExpr{s.substr(pos, end - pos), {}, false});
      pos = end;
    }
  }
  if (stack.size() != 1) throw Error(ErrorCode::SolverProtocolError, "unbalanced parenthesis in solver output");
  return std::move(stack[0].list);
}

inline std::optional<Rational> model_value(const SExpr& e) {
  if (!e.is_list) {
    try {
      return parse_rational(e.atom);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  if (e.list.empty() || e.list[0].is_list) return std::nullopt;
  const std::string& op = e.list[0].atom;
  std::vector<Rational> xs;
  for (size_t i = 1; i < e.list.size(); ++i) {
    auto v = model_value(e.list[i]);
    if (!v) return std::nullopt;
    xs.push_back(*v);
  }
  if (xs.empty()) return std::nullopt;
  if (op == "-") {
    if (xs.size() == 1) return -xs[0];
    Rational r = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) r -= xs[i];
    return r;
  }
  if (op == "+" || op == "*") {
    Rational r = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) r = op == "+" ? r + xs[i] : r * xs[i];
    return r;
  }
  if (op == "/") {
    Rational r = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) {
      if (xs[i] == 0) return std::nullopt;
      r /= xs[i];
    }
    return r;
  }
  return std::nullopt;
}

inline void collect_model(const SExpr& e, std::map<std::string, std::optional<Rational>>& out) {
  if (!e.is_list) return;
  if (e.list.size() == 5 && !e.list[0].is_list && e.list[0].atom == "define-fun" && !e.list[1].is_list) {
    out[e.list[1].atom] = model_value(e.list[4]);
    return;
  }
  for (const auto& c : e.list) collect_model(c, out);
}

}  // namespace detail

// Interprets solver output: first non-empty line sat/unsat/unknown, then an
// optional model made of define-fun entries.
inline SolverResult parse_solver_output(const std::string& out) {
  SolverResult r;
  r.raw = out;
  size_t start = out.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw Error(ErrorCode::SolverProtocolError, "empty solver response");
  size_t eol = out.find('\n', start);
  std::string first = out.substr(start, eol == std::string::npos ? std::string::npos : eol - start);
  while (!first.empty() && std::isspace(static_cast<unsigned char>(first.back()))) first.pop_back();
  if (first == "sat")
    r.status = SolverStatus::Sat;
  else if (first == "unsat")
    r.status = SolverStatus::Unsat;
  else if (first == "unknown")
    r.status = SolverStatus::Unknown;
  else
    throw Error(ErrorCode::SolverProtocolError, "unexpected solver response '" + first + "'");
  if (r.status == SolverStatus::Sat && eol != std::string::npos) {
    for (const auto& e : detail::parse_sexprs(out, eol + 1)) detail::collect_model(e, r.model);
  }
  return r;
}

// Writes `text` to a temporary file and runs `<command> <file>`.
inline SolverResult run_solver(const std::string& command, const std::string& text) {
  char path[] = "/tmp/affcoverXXXXXX.smt2";
  int fd = mkstemps(path, 5);
  if (fd < 0) throw Error(ErrorCode::InvalidArgument, "cannot create temporary solver input");
  {
    FILE* f = fdopen(fd, "w");
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  std::string cmd = command + " '" + path + "' 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    std::remove(path);
    throw Error(ErrorCode::SolverProtocolError, "cannot start solver '" + command + "'");
  }
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  pclose(p);
  std::remove(path);
  return parse_solver_output(out);
}

}  // namespace affcover
