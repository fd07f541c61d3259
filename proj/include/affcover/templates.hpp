#pragma once

#include <algorithm>
#include <bitset>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "affcover/description.hpp"
#include "affcover/error.hpp"
#include "affcover/factorized.hpp"
#include "affcover/graph.hpp"

namespace affcover {

namespace detail {

// Canonical code from per-factor sequences of label sets.
inline CanonicalCode canonical_code_of_sequences(int k, const std::vector<std::vector<std::vector<int>>>& seqs) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalCode best;
  bool have = false;
  std::vector<std::vector<int>> per_factor(k);
  std::vector<int> l;
  do {
    for (int i = 0; i < k; ++i) {
      std::vector<int> fwd, rev;
      auto emit = [&](std::vector<int>& out, const std::vector<int>& labels) {
        l.clear();
        for (int x : labels) l.push_back(perm[x]);
        std::sort(l.begin(), l.end());
        out.insert(out.end(), l.begin(), l.end());
        out.push_back(-1);
      };
      for (const auto& s : seqs[i]) emit(fwd, s);
      for (auto it = seqs[i].rbegin(); it != seqs[i].rend(); ++it) emit(rev, *it);
      per_factor[perm[i]] = std::min(fwd, rev);
    }
    CanonicalCode code;
    for (int i = 0; i < k; ++i) {
      code.insert(code.end(), per_factor[i].begin(), per_factor[i].end());
      code.push_back(-2);
    }
    if (!have || code < best) {
      best = std::move(code);
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

// All pre-templates with k factors, one per canonical class, sorted by code.
inline std::vector<FactorizedGraph> enumerate_pretemplates(int k) {
  std::vector<FactorizedGraph> out;
  if (k < 2) return out;
  if (k > 7) throw Error(ErrorCode::TooLarge, "pre-template enumeration is limited to k <= 7");
  std::vector<unsigned> blocks;
  for (unsigned b = 0; b < (1u << k); ++b)
    if (__builtin_popcount(b) >= 2) blocks.push_back(b);

  std::set<CanonicalCode> codes;
  std::vector<unsigned> family;

  auto emit_orders = [&]() {
    // per factor: its blocks, in every order up to reversal
    std::vector<std::vector<std::vector<unsigned>>> orders(k);
    for (int i = 0; i < k; ++i) {
      std::vector<unsigned> mine;
      for (unsigned b : family)
        if (b >> i & 1) mine.push_back(b);
      std::sort(mine.begin(), mine.end());
      do {
        if (mine.size() < 2 || mine.front() < mine.back()) orders[i].push_back(mine);
      } while (std::next_permutation(mine.begin(), mine.end()));
    }
    std::vector<size_t> pick(k, 0);
    std::vector<std::vector<std::vector<int>>> seqs(k);
    for (;;) {
      for (int i = 0; i < k; ++i) {
        auto& s = seqs[i];
        s.clear();
        s.push_back({i});
        for (unsigned b : orders[i][pick[i]]) {
          std::vector<int> labels;
          for (int j = 0; j < k; ++j)
            if (b >> j & 1) labels.push_back(j);
          s.push_back(std::move(labels));
        }
        s.push_back({i});
      }
      codes.insert(detail::canonical_code_of_sequences(k, seqs));
      int i = 0;
      while (i < k && ++pick[i] == orders[i].size()) pick[i++] = 0;
      if (i == k) break;
    }
  };

  auto covered = [&] {
    unsigned all = 0;
    for (unsigned b : family) all |= b;
    return all == (1u << k) - 1;
  };

  std::function<void(size_t)> rec = [&](size_t from) {
    if (covered()) emit_orders();
    for (size_t i = from; i < blocks.size(); ++i) {
      bool ok = true;
      for (unsigned c : family)
        if (__builtin_popcount(c & blocks[i]) > 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      family.push_back(blocks[i]);
      rec(i + 1);
      family.pop_back();
    }
  };
  rec(0);
  for (const auto& c : codes) out.push_back(from_code(c));
  return out;
}

inline TemplateGraph to_template(const FactorizedGraph& pre) {
  std::string why;
  if (!is_pretemplate(pre, &why)) throw Error(ErrorCode::NotPreTemplate, why);
  const Graph& g = pre.graph;
  auto lab = factor_labels(pre);
  TemplateGraph t;
  int n = g.order();
  t.kind.resize(n);
  for (int v = 0; v < n; ++v) t.kind[v] = g.degree(v) == 1 ? VertexKind::Tail : VertexKind::Crossing;
  std::vector<std::pair<int, int>> edges;
  for (const auto& f : pre.factors) {
    std::vector<int> nf{f.front()};
    for (size_t i = 0; i + 1 < f.size(); ++i) {
      int a = f[i], b = f[i + 1];
      if (g.degree(a) != 1 && g.degree(b) != 1) {
        for (int r = 0; r < 2; ++r) {
          nf.push_back(n++);
          t.kind.push_back(VertexKind::Subdivision);
        }
      }
      nf.push_back(b);
    }
    for (size_t i = 0; i + 1 < nf.size(); ++i) edges.emplace_back(nf[i], nf[i + 1]);
    t.fg.factors.push_back(std::move(nf));
  }
  t.fg.graph = Graph::from_edges(n, edges);
  return t;
}

struct EmbeddingMap {
  std::vector<int> gamma;  // F vertex -> H vertex
};

constexpr int kMaxTemplateVertices = 512;

class EmbeddingSearch {
 public:
  using Bits = std::bitset<kMaxTemplateVertices>;

  EmbeddingSearch(const Graph& f, const TemplateGraph& h) : f_(f), h_(h) {
    int nh = h.graph().order();
    if (nh > kMaxTemplateVertices) throw Error(ErrorCode::TooLarge, "template has too many vertices");
    pos_.assign(h.k(), std::vector<int>(nh, -1));
    for (int i = 0; i < h.k(); ++i)
      for (size_t p = 0; p < h.factors()[i].size(); ++p) pos_[i][h.factors()[i][p]] = static_cast<int>(p);
    on_.assign(nh, {});
    for (int i = 0; i < h.k(); ++i)
      for (int v : h.factors()[i]) on_[v].push_back(i);
  }

  // Factor containing both a and b, or -1.
  int common_factor(int a, int b) const {
    if (a == b) return -1;
    for (int i : on_[a])
      if (pos_[i][b] >= 0) return i;
    return -1;
  }

  Bits segment(int a, int b, int factor) const {
    Bits s;
    int pa = pos_[factor][a], pb = pos_[factor][b];
    if (pa > pb) std::swap(pa, pb);
    for (int p = pa; p <= pb; ++p) s.set(h_.factors()[factor][p]);
    return s;
  }

  std::optional<EmbeddingMap> run() {
    int nf = f_.order();
    order_.clear();
    parent_.assign(nf, -1);
    std::vector<char> seen(nf, 0);
    for (const auto& comp : components(f_)) {
      int root = comp.front();
      for (int v : comp)
        if (f_.degree(v) > f_.degree(root)) root = v;
      seen[root] = 1;
      size_t head = order_.size();
      order_.push_back(root);
      while (head < order_.size()) {
        int v = order_[head++];
        for (int w : f_.neighbors(v))
          if (!seen[w]) {
            seen[w] = 1;
            parent_[w] = v;
            order_.push_back(w);
          }
      }
    }
    gamma_.assign(nf, -1);
    used_.assign(h_.graph().order(), 0);
    segs_.clear();
    if (!place(0)) return std::nullopt;
    return EmbeddingMap{gamma_};
  }

 private:
  struct Seg {
    int a, b;  // F endpoints
    Bits bits;
  };

  bool degree_ok(int v, int hv) const {
    int df = f_.degree(v), dh = h_.graph().degree(hv);
    if ((df == 1) != (dh <= 2)) return false;
    return dh >= df;
  }

  bool place(size_t idx) {
    if (idx == order_.size()) return true;
    int v = order_[idx];
    std::vector<int> cand;
    if (parent_[v] < 0) {
      for (int h = 0; h < h_.graph().order(); ++h) cand.push_back(h);
    } else {
      int hp = gamma_[parent_[v]];
      for (int i : on_[hp])
        for (int h : h_.factors()[i])
          if (h != hp) cand.push_back(h);
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    }
    for (int hv : cand) {
      if (used_[hv] || !degree_ok(v, hv)) continue;
      size_t mark = segs_.size();
      bool ok = true;
      for (int u : f_.neighbors(v)) {
        if (gamma_[u] < 0) continue;
        int fac = common_factor(gamma_[u], hv);
        if (fac < 0) {
          ok = false;
          break;
        }
        Seg s{u, v, segment(gamma_[u], hv, fac)};
        for (const auto& t : segs_) {
          bool adjacent = t.a == u || t.a == v || t.b == u || t.b == v;
          auto common = (t.bits & s.bits).count();
          if (adjacent ? common != 1 : common != 0) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        segs_.push_back(std::move(s));
      }
      if (ok) {
        gamma_[v] = hv;
        used_[hv] = 1;
        if (place(idx + 1)) return true;
        gamma_[v] = -1;
        used_[hv] = 0;
      }
      segs_.resize(mark);
    }
    return false;
  }

  const Graph& f_;
  const TemplateGraph& h_;
  std::vector<std::vector<int>> pos_;
  std::vector<std::vector<int>> on_;
  std::vector<int> order_, parent_, gamma_;
  std::vector<char> used_;
  std::vector<Seg> segs_;
};

inline std::optional<EmbeddingMap> find_embedding(const Graph& f, const TemplateGraph& h) {
  return EmbeddingSearch(f, h).run();
}

// Independent check of the three embedding conditions.
inline bool is_embedding(const Graph& f, const TemplateGraph& h, const EmbeddingMap& m) {
  if (static_cast<int>(m.gamma.size()) != f.order()) return false;
  EmbeddingSearch s(f, h);
  std::set<int> img;
  for (int v = 0; v < f.order(); ++v) {
    int hv = m.gamma[v];
    if (hv < 0 || hv >= h.graph().order() || !img.insert(hv).second) return false;
    if ((f.degree(v) == 1) != (h.graph().degree(hv) <= 2)) return false;
  }
  std::vector<EmbeddingSearch::Bits> bits;
  for (const auto& e : f.edges()) {
    int fac = s.common_factor(m.gamma[e.u], m.gamma[e.v]);
    if (fac < 0) return false;
    bits.push_back(s.segment(m.gamma[e.u], m.gamma[e.v], fac));
  }
  const auto& es = f.edges();
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j) {
      bool adjacent = es[i].touches(es[j].u) || es[i].touches(es[j].v);
      auto c = (bits[i] & bits[j]).count();
      if (adjacent ? c != 1 : c != 0) return false;
    }
  return true;
}

inline CombinatorialDescription description_from_embedding(const EmbeddingMap& m, const Graph& f,
                                                           const TemplateGraph& h) {
  CombinatorialDescription d;
  d.lines.resize(h.k());
  std::vector<int> inv(h.graph().order(), -1);
  for (int v = 0; v < f.order(); ++v) inv[m.gamma[v]] = v;
  EmbeddingSearch s(f, h);
  for (int i = 0; i < h.k(); ++i) {
    std::vector<int> cur;
    for (int hv : h.factors()[i]) {
      int v = inv[hv];
      if (v < 0) continue;
      if (!cur.empty() && !(f.has_edge(cur.back(), v) && s.common_factor(m.gamma[cur.back()], hv) == i)) {
        if (cur.size() >= 2) d.lines[i].push_back(cur);
        cur.clear();
      }
      cur.push_back(v);
    }
    if (cur.size() >= 2) d.lines[i].push_back(cur);
  }
  return d;
}

}  // namespace affcover
