#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affcover/description.hpp"
#include "affcover/error.hpp"
#include "affcover/factorized.hpp"
#include "affcover/geom.hpp"
#include "affcover/graph.hpp"
#include "affcover/kernel.hpp"
#include "affcover/stretch.hpp"
#include "affcover/templates.hpp"

namespace affcover {

struct CoverQuery {
  Graph g;
  int k = 1;
  int d = 2;
};

struct Decision {
  Answer answer = Answer::Unknown;
  std::optional<CombinatorialDescription> description;  // Yes
  std::optional<Realization<Rational>> realization;     // Yes: a drawing of G on the k lines
  std::optional<TemplateGraph> templ;                   // Yes, unless G is a union of paths
  std::vector<TemplateGraph> pending;                   // Unknown
  std::string reason;
  long long candidates = 0;  // (S, G_S) pairs examined
};

struct ReducedCandidate {
  std::vector<int> s;  // kept degree-2 vertices, sorted
  SmoothResult smoothed;
};

namespace detail {

// Degree-2 runs whose kept part must be an initial segment: straight-path
// interiors and bare cycles.
inline std::vector<std::vector<int>> smoothable_runs(const Graph& g) {
  auto st = straight_structure(g);
  std::vector<std::vector<int>> runs;
  for (const auto& p : st.paths)
    if (p.vertices.size() > 2) runs.emplace_back(p.vertices.begin() + 1, p.vertices.end() - 1);
  for (auto& c : st.cycles) runs.push_back(std::move(c));
  return runs;
}

}  // namespace detail

// One representative G_S per class of equally-sized initial segments, |S| <= C(k,2).
// Classes whose smoothing would collapse edges are skipped: no drawing keeps
// two parallel paths straight or closes a cycle with fewer than three bends.
inline std::vector<ReducedCandidate> enumerate_reduced_family(const Graph& g, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1, got " + std::to_string(k));
  auto runs = detail::smoothable_runs(g);
  const int K = static_cast<int>(choose2(k));
  std::vector<ReducedCandidate> out;
  std::vector<int> count(runs.size(), 0);
  auto emit = [&] {
    std::vector<int> s;
    for (size_t i = 0; i < runs.size(); ++i) s.insert(s.end(), runs[i].begin(), runs[i].begin() + count[i]);
    std::sort(s.begin(), s.end());
    try {
      auto sm = smooth(g, s);
      out.push_back({std::move(s), std::move(sm)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MultiEdgeCollapse) throw;
    }
  };
  auto rec = [&](auto&& self, size_t i, int left) -> void {
    if (i == runs.size()) return emit();
    int top = std::min<int>(left, static_cast<int>(runs[i].size()));
    for (int c = 0; c <= top; ++c) {
      count[i] = c;
      self(self, i + 1, left - c);
    }
    count[i] = 0;
  };
  rec(rec, 0, K);
  std::stable_sort(out.begin(), out.end(), [](const ReducedCandidate& a, const ReducedCandidate& b) {
    if (a.s.size() != b.s.size()) return a.s.size() < b.s.size();
    return a.s < b.s;
  });
  return out;
}

// Re-inserts the vertices smoothed away when G_S was built from g.
inline CombinatorialDescription lift_description(const CombinatorialDescription& desc, const Graph& g,
                                                 const std::vector<int>& s) {
  auto sm = smooth(g, s);
  check_description(sm.graph, desc);
  std::vector<char> kept(g.order(), 0);
  for (int v : sm.new_to_old) kept[v] = 1;
  // the run of g from a to b through smoothed vertices, b excluded
  auto route = [&](int a, int b) {
    for (int x : g.neighbors(a)) {
      std::vector<int> seq{a};
      int prev = a, cur = x;
      while (!kept[cur]) {
        seq.push_back(cur);
        const auto& nb = g.neighbors(cur);
        int nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
      }
      if (cur == b) return seq;
    }
    throw Error(ErrorCode::InconsistentDescription,
                "no path between " + std::to_string(a + 1) + " and " + std::to_string(b + 1));
  };
  CombinatorialDescription out;
  out.lines.resize(desc.lines.size());
  for (size_t i = 0; i < desc.lines.size(); ++i)
    for (const auto& path : desc.lines[i]) {
      std::vector<int> full;
      for (size_t t = 0; t + 1 < path.size(); ++t) {
        auto seq = route(sm.new_to_old[path[t]], sm.new_to_old[path[t + 1]]);
        full.insert(full.end(), seq.begin(), seq.end());
      }
      full.push_back(sm.new_to_old[path.back()]);
      out.lines[i].push_back(std::move(full));
    }
  check_description(g, out);
  return out;
}

// Stretchability verdicts per (template, dimension), shared across queries.
class TemplateVerdictCache {
 public:
  const StretchVerdict& get(const TemplateGraph& h, int d, const StretchOptions& opt) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(canonical_code(h.fg), d);
    auto it = verdicts_.find(key);
    if (it == verdicts_.end()) it = verdicts_.emplace(key, is_stretchable(h, d, opt)).first;
    return it->second;
  }
  size_t size() const { return verdicts_.size(); }

 private:
  std::mutex mu_;
  std::map<std::pair<CanonicalCode, int>, StretchVerdict> verdicts_;
};

inline const std::vector<TemplateGraph>& templates_for(int k) {
  static std::mutex mu;
  static std::map<int, std::vector<TemplateGraph>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  std::vector<TemplateGraph> ts;
  for (const auto& p : enumerate_pretemplates(k)) ts.push_back(to_template(p));
  return memo.emplace(k, std::move(ts)).first->second;
}

struct DecideOptions {
  StretchOptions stretch;
  TemplateVerdictCache* cache = nullptr;
};

namespace detail {

inline Point<Rational> unit_point(int d, Rational x, Rational y) {
  std::vector<Rational> c(d, Rational(0));
  c[0] = x;
  c[1] = y;
  return Point<Rational>(std::move(c));
}

// Completes a drawing of g from fixed positions of the description's path ends
// and line carriers: interior vertices are spaced evenly between anchors, and
// unplaced vertices are strung along line 1 beyond everything else, `tail` first.
inline Realization<Rational> complete_drawing(const Graph& g, const CombinatorialDescription& desc,
                                              std::vector<std::optional<Point<Rational>>> anchor,
                                              std::vector<Line<Rational>> lines, int d,
                                              const std::vector<int>& tail = {}) {
  Realization<Rational> r;
  r.dim = d;
  r.lines = std::move(lines);
  std::vector<std::optional<Point<Rational>>> pos = std::move(anchor);
  for (size_t i = 0; i < desc.lines.size(); ++i)
    for (const auto& path : desc.lines[i]) {
      if (!pos[path.front()]) throw Error(ErrorCode::InconsistentDescription, "path end without a position");
      size_t a = 0;
      for (size_t t = 1; t < path.size(); ++t) {
        if (!pos[path[t]] && t + 1 < path.size()) continue;
        if (!pos[path[t]]) throw Error(ErrorCode::InconsistentDescription, "path end without a position");
        const auto &pa = *pos[path[a]], &pb = *pos[path[t]];
        Rational m(static_cast<long>(t - a));
        for (size_t u = a + 1; u < t; ++u) pos[path[u]] = pa + (Rational(static_cast<long>(u - a)) / m) * (pb - pa);
        a = t;
      }
      for (size_t t = 0; t + 1 < path.size(); ++t) r.assignment[Edge(path[t], path[t + 1])] = static_cast<int>(i);
    }
  const auto& l0 = r.lines.front();
  auto dir = l0.q - l0.p;
  Rational norm = dot(dir, dir), top(0);
  bool any = false;
  for (const auto& p : pos)
    if (p) {
      Rational t = dot(*p - l0.p, dir) / norm;
      if (!any || top < t) top = t;
      any = true;
    }
  Rational next = any ? top + Rational(1) : Rational(0);
  std::vector<int> order = tail;
  for (int v = 0; v < g.order(); ++v) order.push_back(v);
  for (int v : order)
    if (!pos[v]) {
      pos[v] = l0.p + next * dir;
      next += Rational(1);
    }
  for (const auto& p : pos) r.positions.push_back(*p);
  return r;
}

}  // namespace detail

// Decides rho^1_d(G) <= k: kernel counts, then every reduced candidate
// against every k-line template admitting a combinatorial embedding.
inline Decision decide_line_cover(const CoverQuery& q, const DecideOptions& opt = {}) {
  const Graph& g = q.g;
  auto kr = kernelize(g, q.k, q.d);
  Decision out;
  if (kr.verdict == KernelVerdict::RejectedByCounts) {
    out.answer = Answer::No;
    out.reason = kr.reason;
    return out;
  }

  std::vector<char> dropped(g.order(), 0);
  for (const auto& p : kr.dropped_paths)
    for (int v : p) dropped[v] = 1;
  std::vector<int> rest;
  for (int v = 0; v < g.order(); ++v)
    if (!dropped[v]) rest.push_back(v);
  auto finish = [&](const CombinatorialDescription& rdesc, const std::vector<std::optional<Point<Rational>>>& anchor,
                    std::vector<Line<Rational>> lines) {
    CombinatorialDescription desc;
    desc.lines.resize(q.k);
    for (size_t i = 0; i < rdesc.lines.size(); ++i)
      for (auto path : rdesc.lines[i]) {
        for (int& v : path) v = rest[v];
        desc.lines[i].push_back(std::move(path));
      }
    std::vector<std::optional<Point<Rational>>> ganchor(g.order());
    for (size_t i = 0; i < anchor.size(); ++i) ganchor[rest[i]] = anchor[i];
    std::vector<int> tail;
    for (const auto& p : kr.dropped_paths) tail.insert(tail.end(), p.begin(), p.end());
    auto drawing = detail::complete_drawing(g, desc, std::move(ganchor), std::move(lines), q.d, tail);
    for (const auto& p : kr.dropped_paths)
      if (p.size() >= 2) desc.lines[0].push_back(p);
    check_description(g, desc);
    for (const auto& p : kr.dropped_paths)
      for (size_t t = 0; t + 1 < p.size(); ++t) drawing.assignment[Edge(p[t], p[t + 1])] = 0;
    respan_lines(g, drawing);
    out.answer = Answer::Yes;
    out.description = std::move(desc);
    out.realization = std::move(drawing);
  };

  if (rest.empty()) {
    std::vector<Line<Rational>> lines;
    for (int i = 0; i < q.k; ++i)
      lines.push_back({detail::unit_point(q.d, Rational(0), Rational(i)), detail::unit_point(q.d, Rational(1), Rational(i))});
    finish({}, {}, std::move(lines));
    out.reason = "every component is a path";
    return out;
  }
  if (q.k == 1) {
    out.answer = Answer::No;
    out.reason = "a single line only carries paths";
    return out;
  }

  Graph r = induced_subgraph(g, rest);
  const auto& templates = templates_for(q.k);
  TemplateVerdictCache local;
  TemplateVerdictCache& cache = opt.cache ? *opt.cache : local;
  std::vector<char> pending(templates.size(), 0);
  for (const auto& cand : enumerate_reduced_family(r, q.k)) {
    ++out.candidates;
    const Graph& f = cand.smoothed.graph;
    for (size_t ti = 0; ti < templates.size(); ++ti) {
      const auto& h = templates[ti];
      auto emb = find_embedding(f, h);
      if (!emb) continue;
      const auto& v = cache.get(h, q.d, opt.stretch);
      if (v.answer == Answer::No) continue;
      if (v.answer == Answer::Unknown) {
        pending[ti] = 1;
        continue;
      }
      auto fdesc = description_from_embedding(*emb, f, h);
      auto rdesc = lift_description(fdesc, r, cand.s);
      std::vector<std::optional<Point<Rational>>> anchor(r.order());
      for (int x = 0; x < f.order(); ++x) anchor[cand.smoothed.new_to_old[x]] = v.realization->positions[emb->gamma[x]];
      finish(std::move(rdesc), std::move(anchor), v.realization->lines);
      out.templ = h;
      out.pending.clear();
      return out;
    }
  }
  for (size_t ti = 0; ti < templates.size(); ++ti)
    if (pending[ti]) out.pending.push_back(templates[ti]);
  if (out.pending.empty()) {
    out.answer = Answer::No;
    out.reason = "no reduced candidate embeds into a stretchable template";
  } else {
    out.answer = Answer::Unknown;
    out.reason = std::to_string(out.pending.size()) + " template(s) with unresolved stretchability";
  }
  return out;
}

}  // namespace affcover
