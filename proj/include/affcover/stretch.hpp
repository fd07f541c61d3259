#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "affcover/error.hpp"
#include "affcover/factorized.hpp"
#include "affcover/formula.hpp"
#include "affcover/geom.hpp"
#include "affcover/graph.hpp"
#include "affcover/solver.hpp"

namespace affcover {

// Vertex-disjoint paths to be drawn on each line; the order of the paths along
// a line is left to the search.
using LinePaths = std::vector<std::vector<std::vector<int>>>;

struct RealizeOptions {
  int budget = 16;          // number of restarts (per dimension tried)
  std::uint64_t seed = 0;
  int iterations = 250;     // Levenberg-Marquardt steps per restart
};

namespace detail {

class IncidenceSearch {
 public:
  static constexpr double kDelta = 0.05;
  static constexpr double kBox = 10.0;

  IncidenceSearch(const Graph& g, const LinePaths& lines, int dim) : g_(g), lines_(lines), dim_(dim) {
    n_ = g.order();
    k_ = static_cast<int>(lines.size());
    members_.resize(k_);
    lines_of_.resize(n_);
    for (int l = 0; l < k_; ++l) {
      for (const auto& p : lines[l])
        for (int v : p) members_[l].push_back(v);
      std::sort(members_[l].begin(), members_[l].end());
      members_[l].erase(std::unique(members_[l].begin(), members_[l].end()), members_[l].end());
      for (int v : members_[l]) lines_of_[v].push_back(l);
      for (const auto& p : lines[l])
        for (size_t t = 0; t + 1 < p.size(); ++t) assignment_[Edge(p[t], p[t + 1])] = l;
    }
    build_terms();
  }

  std::optional<Realization<Rational>> attempt(std::uint64_t seed, int restart, int iterations) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(dim_)};
    std::mt19937_64 rng(seq);
    Eigen::VectorXd z = initial(restart, rng);
    double cost = minimize(z, iterations);
    if (!(cost < 1e-12)) return std::nullopt;
    for (std::int64_t den : {std::int64_t{1} << 10, std::int64_t{1} << 20, std::int64_t{1} << 32}) {
      auto r = construct(z, den);
      if (r) return r;
    }
    return std::nullopt;
  }

  // Exact checks: a valid cover drawing with pairwise distinct lines.
  bool certified(const Realization<Rational>& r) const {
    if (!verify_cover(g_, r).valid) return false;
    for (size_t i = 0; i < r.lines.size(); ++i)
      for (size_t j = i + 1; j < r.lines.size(); ++j)
        if (same_line(r.lines[i], r.lines[j])) return false;
    return true;
  }

 private:
  enum class Kind { Incidence, Unit, Order, Separation, PointSegment, Crossing, Distinct, Box };

  struct Term {
    Kind kind;
    int a = -1, b = -1, c = -1, e = -1;  // meaning depends on kind
    std::vector<int> vars = {};
  };

  int pos(int v, int axis) const { return v * dim_ + axis; }
  int line_p(int l, int axis) const { return n_ * dim_ + l * 2 * dim_ + axis; }
  int line_u(int l, int axis) const { return n_ * dim_ + l * 2 * dim_ + dim_ + axis; }
  int num_vars() const { return n_ * dim_ + k_ * 2 * dim_; }

  void add_point_vars(std::vector<int>& vs, int v) const {
    for (int i = 0; i < dim_; ++i) vs.push_back(pos(v, i));
  }
  void add_line_vars(std::vector<int>& vs, int l) const {
    for (int i = 0; i < dim_; ++i) vs.push_back(line_p(l, i));
    for (int i = 0; i < dim_; ++i) vs.push_back(line_u(l, i));
  }

  void build_terms() {
    for (int l = 0; l < k_; ++l) {
      for (int v : members_[l])
        for (int axis = 0; axis < dim_; ++axis) {
          Term t{Kind::Incidence, v, l, axis};
          add_point_vars(t.vars, v);
          add_line_vars(t.vars, l);
          terms_.push_back(std::move(t));
        }
      Term u{Kind::Unit, l};
      for (int i = 0; i < dim_; ++i) u.vars.push_back(line_u(l, i));
      terms_.push_back(std::move(u));
      for (const auto& p : lines_[l])
        for (size_t t = 1; t + 1 < p.size(); ++t) {
          Term o{Kind::Order, p[t - 1], p[t], p[t + 1]};
          for (int v : {p[t - 1], p[t], p[t + 1]}) add_point_vars(o.vars, v);
          terms_.push_back(std::move(o));
        }
    }
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) {
        Term s{Kind::Separation, a, b};
        add_point_vars(s.vars, a);
        add_point_vars(s.vars, b);
        terms_.push_back(std::move(s));
      }
    const auto& es = g_.edges();
    for (int v = 0; v < n_; ++v)
      for (int ei = 0; ei < static_cast<int>(es.size()); ++ei) {
        if (es[ei].touches(v)) continue;
        Term s{Kind::PointSegment, v, es[ei].u, es[ei].v};
        for (int x : {v, es[ei].u, es[ei].v}) add_point_vars(s.vars, x);
        terms_.push_back(std::move(s));
      }
    if (dim_ == 2)
      for (size_t i = 0; i < es.size(); ++i)
        for (size_t j = i + 1; j < es.size(); ++j) {
          const Edge &e = es[i], &f = es[j];
          if (e.touches(f.u) || e.touches(f.v)) continue;
          auto li = assignment_.find(e), lj = assignment_.find(f);
          if (li != assignment_.end() && lj != assignment_.end() && li->second == lj->second) continue;
          Term c{Kind::Crossing, e.u, e.v, f.u, f.v};
          for (int x : {e.u, e.v, f.u, f.v}) add_point_vars(c.vars, x);
          terms_.push_back(std::move(c));
        }
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) {
        if (i == j) continue;
        bool share = false;
        for (int v : members_[j]) share = share || std::binary_search(members_[i].begin(), members_[i].end(), v);
        if (share) continue;
        Term d{Kind::Distinct, i, j};
        add_line_vars(d.vars, i);
        for (int v : members_[j]) add_point_vars(d.vars, v);
        terms_.push_back(std::move(d));
      }
    for (int v = 0; v < n_; ++v)
      for (int axis = 0; axis < dim_; ++axis) {
        Term b{Kind::Box, v, axis};
        b.vars.push_back(pos(v, axis));
        terms_.push_back(std::move(b));
      }
  }

  using Vec = Eigen::Matrix<double, 3, 1>;

  Vec point(const Eigen::VectorXd& z, int v) const {
    Vec p = Vec::Zero();
    for (int i = 0; i < dim_; ++i) p[i] = z[pos(v, i)];
    return p;
  }
  Vec lp(const Eigen::VectorXd& z, int l) const {
    Vec p = Vec::Zero();
    for (int i = 0; i < dim_; ++i) p[i] = z[line_p(l, i)];
    return p;
  }
  Vec lu(const Eigen::VectorXd& z, int l) const {
    Vec p = Vec::Zero();
    for (int i = 0; i < dim_; ++i) p[i] = z[line_u(l, i)];
    return p;
  }

  static double seg_dist(const Vec& x, const Vec& a, const Vec& b) {
    Vec ab = b - a;
    double len2 = ab.squaredNorm();
    double t = len2 > 0 ? std::clamp((x - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (x - (a + t * ab)).norm();
  }

  static double orient(const Vec& a, const Vec& b, const Vec& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  }

  double line_dist(const Eigen::VectorXd& z, int l, const Vec& x) const {
    Vec u = lu(z, l);
    double un = u.norm();
    if (un < 1e-12) return 0;
    Vec w = x - lp(z, l);
    return (w - w.dot(u) / (un * un) * u).norm();
  }

  // Residual before the hinge is applied; hinge terms report their slack.
  double raw(const Term& t, const Eigen::VectorXd& z) const {
    switch (t.kind) {
      case Kind::Incidence: {
        Vec u = lu(z, t.b);
        double un2 = std::max(u.squaredNorm(), 1e-12);
        Vec w = point(z, t.a) - lp(z, t.b);
        Vec perp = w - w.dot(u) / un2 * u;
        return perp[t.c];
      }
      case Kind::Unit: return lu(z, t.a).squaredNorm() - 1.0;
      case Kind::Order: {
        Vec a = point(z, t.a), b = point(z, t.b), c = point(z, t.c);
        return kDelta * kDelta - (b - a).dot(c - b);
      }
      case Kind::Separation: return kDelta - (point(z, t.a) - point(z, t.b)).norm();
      case Kind::PointSegment: return kDelta - seg_dist(point(z, t.a), point(z, t.b), point(z, t.c));
      case Kind::Crossing: {
        Vec a = point(z, t.a), b = point(z, t.b), c = point(z, t.c), d = point(z, t.e);
        double s1 = -orient(a, b, c) * orient(a, b, d);
        double s2 = -orient(c, d, a) * orient(c, d, b);
        return std::min(s1, s2);
      }
      case Kind::Distinct: {
        double best = 0;
        for (int v : members_[t.b]) best = std::max(best, line_dist(z, t.a, point(z, v)));
        return kDelta - best;
      }
      case Kind::Box: return std::abs(z[pos(t.a, t.b)]) - kBox;
    }
    return 0;
  }

  static bool is_hinge(Kind k) { return k != Kind::Incidence && k != Kind::Unit; }

  double residual(const Term& t, const Eigen::VectorXd& z) const {
    double r = raw(t, z);
    return is_hinge(t.kind) ? std::max(0.0, r) : r;
  }

  double cost(const Eigen::VectorXd& z) const {
    double s = 0;
    for (const auto& t : terms_) {
      double r = residual(t, z);
      s += r * r;
    }
    return 0.5 * s;
  }

  double minimize(Eigen::VectorXd& z, int iterations) const {
    const int nv = num_vars();
    double c = cost(z);
    double lambda = 1e-3;
    Eigen::MatrixXd a(nv, nv);
    Eigen::VectorXd grad(nv);
    Eigen::VectorXd zz = z;
    std::vector<std::pair<int, double>> row;
    for (int it = 0; it < iterations && c > 1e-26; ++it) {
      a.setZero();
      grad.setZero();
      for (const auto& t : terms_) {
        double r0 = raw(t, z);
        if (is_hinge(t.kind) && r0 < -1e-3) continue;
        double f0 = is_hinge(t.kind) ? std::max(0.0, r0) : r0;
        row.clear();
        for (int var : t.vars) {
          double h = 1e-7 * std::max(1.0, std::abs(zz[var]));
          zz[var] += h;
          double f1 = residual(t, zz);
          zz[var] = z[var];
          double d = (f1 - f0) / h;
          if (d != 0) row.emplace_back(var, d);
        }
        for (auto [i, di] : row) {
          grad[i] += di * f0;
          for (auto [j, dj] : row) a(i, j) += di * dj;
        }
      }
      bool improved = false;
      while (lambda < 1e10) {
        Eigen::MatrixXd m = a;
        for (int i = 0; i < nv; ++i) m(i, i) += lambda * (a(i, i) + 1e-6);
        Eigen::VectorXd step = m.ldlt().solve(-grad);
        Eigen::VectorXd cand = z + step;
        double cc = cost(cand);
        if (std::isfinite(cc) && cc < c) {
          z = cand;
          zz = z;
          c = cc;
          lambda = std::max(lambda / 3, 1e-12);
          improved = true;
          break;
        }
        lambda *= 4;
      }
      if (!improved) break;
    }
    return c;
  }

  // Order mismatch of a planar line set: inversions of the crossing vertices
  // along each path plus overlapping paths on a common line.
  double order_score(const std::vector<Vec>& ps, const std::vector<Vec>& us) const {
    std::vector<Vec> x(n_);
    std::vector<char> has(n_, 0);
    double score = 0;
    for (int v = 0; v < n_; ++v) {
      if (lines_of_[v].size() < 2) continue;
      int l1 = lines_of_[v][0], l2 = lines_of_[v][1];
      double den = us[l1][0] * us[l2][1] - us[l1][1] * us[l2][0];
      if (std::abs(den) < 1e-9) return 1e9;
      Vec w = ps[l2] - ps[l1];
      double t = (w[0] * us[l2][1] - w[1] * us[l2][0]) / den;
      x[v] = ps[l1] + t * us[l1];
      has[v] = 1;
      for (size_t i = 2; i < lines_of_[v].size(); ++i) {
        int l3 = lines_of_[v][i];
        Vec d = x[v] - ps[l3];
        score += std::abs(d[0] * us[l3][1] - d[1] * us[l3][0]);
      }
    }
    for (int l = 0; l < k_; ++l) {
      std::vector<std::pair<double, double>> spans;
      for (const auto& path : lines_[l]) {
        std::vector<double> t;
        for (int v : path)
          if (has[v]) t.push_back((x[v] - ps[l]).dot(us[l]));
        int up = 0, down = 0;
        for (size_t i = 0; i < t.size(); ++i)
          for (size_t j = i + 1; j < t.size(); ++j) (t[i] < t[j] ? up : down)++;
        score += std::min(up, down);
        if (!t.empty()) spans.emplace_back(*std::min_element(t.begin(), t.end()), *std::max_element(t.begin(), t.end()));
      }
      for (size_t i = 0; i < spans.size(); ++i)
        for (size_t j = i + 1; j < spans.size(); ++j)
          if (spans[i].first <= spans[j].second && spans[j].first <= spans[i].second) score += 1;
    }
    return score;
  }

  Eigen::VectorXd initial(int restart, std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(num_vars());
    const double pi = std::acos(-1.0);
    std::vector<Vec> ps(k_, Vec::Zero()), us(k_, Vec::Zero());
    if (dim_ == 2 && restart == 0 && k_ <= 2) {
      for (int l = 0; l < k_; ++l) {
        double th = pi * l / k_;
        us[l] << -std::sin(th), std::cos(th), 0;
      }
    } else if (dim_ == 2) {
      // best of many random line sets
      double best = std::numeric_limits<double>::infinity();
      std::vector<Vec> cp(k_, Vec::Zero()), cu(k_, Vec::Zero());
      for (int sample = 0; sample < 300 && best > 0; ++sample) {
        for (int l = 0; l < k_; ++l) {
          double th = pi * (uni(rng) + 1), off = 2 * uni(rng);
          cp[l] << off * std::cos(th), off * std::sin(th), 0;
          cu[l] << -std::sin(th), std::cos(th), 0;
        }
        double sc = order_score(cp, cu);
        if (sc < best) {
          best = sc;
          ps = cp;
          us = cu;
        }
      }
    } else {
      for (int l = 0; l < k_; ++l) {
        do {
          us[l] << uni(rng), uni(rng), uni(rng);
        } while (us[l].norm() < 0.2);
        us[l].normalize();
        ps[l] << 2 * uni(rng), 2 * uni(rng), 2 * uni(rng);
      }
    }
    for (int l = 0; l < k_; ++l)
      for (int i = 0; i < dim_; ++i) {
        z[line_p(l, i)] = ps[l][i];
        z[line_u(l, i)] = us[l][i];
      }
    std::vector<char> placed(n_, 0);
    for (int v = 0; v < n_; ++v) {
      if (lines_of_[v].size() < 2) continue;
      int l1 = lines_of_[v][0], l2 = lines_of_[v][1];
      Vec p1 = lp(z, l1), u1 = lu(z, l1), p2 = lp(z, l2), u2 = lu(z, l2);
      // closest point of line 1 to line 2, midpoint of the common perpendicular
      double b = u1.dot(u2), den = 1 - b * b;
      Vec w = p1 - p2;
      Vec x;
      if (std::abs(den) < 1e-6) {
        x = p1 + 3 * uni(rng) * u1;
      } else {
        double s = (b * u2.dot(w) - u1.dot(w)) / den;
        double t = (u2.dot(w) - b * u1.dot(w)) / den;
        x = 0.5 * ((p1 + s * u1) + (p2 + t * u2));
      }
      for (int i = 0; i < dim_; ++i) z[pos(v, i)] = x[i];
      placed[v] = 1;
    }
    double jitter = restart == 0 ? 0.0 : 1e-3;
    for (int l = 0; l < k_; ++l) {
      Vec p = lp(z, l), u = lu(z, l);
      for (const auto& path : lines_[l]) {
        int m = static_cast<int>(path.size());
        std::vector<double> t(m, 0);
        std::vector<int> known;
        for (int i = 0; i < m; ++i)
          if (placed[path[i]]) {
            t[i] = (point(z, path[i]) - p).dot(u);
            known.push_back(i);
          }
        if (known.empty()) {
          double s0 = 3 * uni(rng), dir = uni(rng) < 0 ? -1 : 1;
          for (int i = 0; i < m; ++i) t[i] = s0 + dir * i;
        } else {
          double dir = known.size() >= 2 && t[known.back()] < t[known.front()] ? -1 : 1;
          for (int i = 0; i < known.front(); ++i) t[i] = t[known.front()] - dir * (known.front() - i);
          for (int i = known.back() + 1; i < m; ++i) t[i] = t[known.back()] + dir * (i - known.back());
          for (size_t q = 0; q + 1 < known.size(); ++q) {
            int lo = known[q], hi = known[q + 1];
            for (int i = lo + 1; i < hi; ++i) t[i] = t[lo] + (t[hi] - t[lo]) * (i - lo) / (hi - lo);
          }
        }
        for (int i = 0; i < m; ++i) {
          if (placed[path[i]]) continue;
          Vec x = p + t[i] * u;
          for (int a = 0; a < dim_; ++a) z[pos(path[i], a)] = x[a] + jitter * uni(rng);
        }
      }
    }
    for (int v = 0; v < n_; ++v)
      if (lines_of_[v].empty())
        for (int a = 0; a < dim_; ++a) z[pos(v, a)] = 5 * uni(rng);
    return z;
  }

  // Line processing order in which every line meets at most two points that
  // are already fixed when its turn comes.
  std::optional<std::vector<int>> processing_order() const {
    std::vector<int> order;
    std::vector<char> done(k_, 0);
    std::vector<char> dead(1u << std::min(k_, 20), 0);
    auto fixed_count = [&](int l) {
      int c = 0;
      for (int v : members_[l]) {
        int earlier = 0;
        for (int m : lines_of_[v]) earlier += done[m];
        c += dim_ == 2 ? earlier >= 2 : earlier >= 1;
      }
      return c;
    };
    std::function<bool(unsigned)> rec = [&](unsigned mask) {
      if (static_cast<int>(order.size()) == k_) return true;
      if (k_ <= 20 && dead[mask]) return false;
      for (int l = 0; l < k_; ++l) {
        if (done[l] || fixed_count(l) > 2) continue;
        done[l] = 1;
        order.push_back(l);
        if (rec(mask | 1u << l)) return true;
        order.pop_back();
        done[l] = 0;
      }
      if (k_ <= 20) dead[mask] = 1;
      return false;
    };
    if (!rec(0)) return std::nullopt;
    return order;
  }

  std::optional<Realization<Rational>> construct(const Eigen::VectorXd& z, std::int64_t den) const {
    auto order = processing_order();
    if (!order) return std::nullopt;
    using P = Point<Rational>;
    auto rounded = [&](int v) {
      P p;
      for (int i = 0; i < dim_; ++i) p.c.push_back(approximate(z[pos(v, i)], den));
      return p;
    };
    auto project = [](const P& x, const Line<Rational>& l) {
      auto d = l.q - l.p;
      return l.p + (dot(x - l.p, d) / dot(d, d)) * d;
    };
    std::vector<std::optional<P>> at(n_);
    std::vector<std::optional<Line<Rational>>> line(k_);
    std::vector<char> done(k_, 0);
    for (int l : *order) {
      std::vector<int> fixed;
      for (int v : members_[l])
        if (at[v]) {
          int earlier = 0;
          for (int m : lines_of_[v]) earlier += done[m];
          if (dim_ == 3 || earlier >= 2) fixed.push_back(v);
        }
      auto far_from = [&](const Vec& x, int skip) {
        int best = -1;
        double bd = -1;
        for (int v : members_[l]) {
          if (v == skip) continue;
          double dd = (point(z, v) - x).norm();
          if (dd > bd) {
            bd = dd;
            best = v;
          }
        }
        return best;
      };
      Line<Rational> L;
      if (fixed.size() >= 2) {
        L = {*at[fixed[0]], *at[fixed[1]]};
      } else if (fixed.size() == 1) {
        int w = far_from(point(z, fixed[0]), fixed[0]);
        L = {*at[fixed[0]], rounded(w)};
      } else {
        int a = members_[l][0];
        int b = far_from(point(z, a), a);
        a = far_from(point(z, b), b);
        L = {rounded(a), rounded(b)};
      }
      if (L.p == L.q) return std::nullopt;
      line[l] = L;
      done[l] = 1;
      for (int v : members_[l]) {
        if (dim_ == 2) {
          int earlier = -1;
          for (int m : lines_of_[v])
            if (m != l && done[m] && line[m]) earlier = m;
          if (at[v] && std::find(fixed.begin(), fixed.end(), v) != fixed.end()) continue;
          if (earlier >= 0) {
            auto x = line_intersection(*line[earlier], L);
            if (!x) return std::nullopt;
            at[v] = *x;
          } else {
            at[v] = project(rounded(v), L);
          }
        } else if (!at[v]) {
          at[v] = project(rounded(v), L);
        }
      }
    }
    Realization<Rational> r;
    r.dim = dim_;
    for (int v = 0; v < n_; ++v) r.positions.push_back(at[v] ? *at[v] : rounded(v));
    for (int l = 0; l < k_; ++l) r.lines.push_back(*line[l]);
    r.assignment = assignment_;
    respan_lines(g_, r);
    if (!certified(r)) return std::nullopt;
    return r;
  }

  const Graph& g_;
  const LinePaths& lines_;
  int dim_, n_, k_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> lines_of_;
  std::map<Edge, int> assignment_;
  std::vector<Term> terms_;
};

}  // namespace detail

inline Realization<Rational> lift_to_space(Realization<Rational> r) {
  if (r.dim == 3) return r;
  r.dim = 3;
  for (auto& p : r.positions) p.c.push_back(Rational(0));
  for (auto& l : r.lines) {
    l.p.c.push_back(Rational(0));
    l.q.c.push_back(Rational(0));
  }
  return r;
}

// Draws g with the given paths on k distinct lines, crossing-free, exactly.
// For d = 3 the planar search runs first (a planar drawing is a spatial one).
inline std::optional<Realization<Rational>> realize_incidences(const Graph& g, const LinePaths& lines, int d,
                                                               const RealizeOptions& opt = {}) {
  if (d != 2 && d != 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 2 or 3");
  for (const auto& l : lines)
    if (l.empty()) throw Error(ErrorCode::InvalidArgument, "every line needs at least one path");
  if (opt.budget <= 0) return std::nullopt;
  for (int dim = 2; dim <= d; ++dim) {
    detail::IncidenceSearch s(g, lines, dim);
    for (int r = 0; r < opt.budget; ++r)
      if (auto res = s.attempt(opt.seed, r, opt.iterations)) return d == 3 ? lift_to_space(*res) : *res;
  }
  return std::nullopt;
}

inline LinePaths factor_paths(const TemplateGraph& h) {
  LinePaths lp;
  for (const auto& f : h.factors()) lp.push_back({f});
  return lp;
}

inline std::optional<Realization<Rational>> realize(const TemplateGraph& h, int d, const RealizeOptions& opt = {}) {
  validate_template(h);
  return realize_incidences(h.graph(), factor_paths(h), d, opt);
}

enum class Answer { Yes, No, Unknown };

inline std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "YES";
    case Answer::No: return "NO";
    case Answer::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

struct StretchVerdict {
  Answer answer = Answer::Unknown;
  std::optional<Realization<Rational>> realization;  // Yes
  std::string certificate;                            // No: solver reference
  std::string reason;                                 // Unknown
  int budget_spent = 0;
};

struct StretchOptions {
  RealizeOptions realize;
  std::optional<std::string> solver;  // command; falls back to $AFFCOVER_SOLVER
};

// Realization read off a solver model of emit_stretch_formula(h, d).
inline std::optional<Realization<Rational>> realization_from_model(const TemplateGraph& h, int d,
                                                                   const SolverResult& res) {
  static const char* axis[] = {"x", "y", "z"};
  Realization<Rational> r;
  r.dim = d;
  for (int v = 0; v < h.graph().order(); ++v) {
    Point<Rational> p;
    for (int i = 0; i < d; ++i) {
      auto it = res.model.find("v" + std::to_string(v + 1) + "_" + axis[i]);
      if (it == res.model.end()) {
        p.c.push_back(Rational(0));
      } else if (!it->second) {
        return std::nullopt;
      } else {
        p.c.push_back(*it->second);
      }
    }
    r.positions.push_back(p);
  }
  for (int i = 0; i < h.k(); ++i) {
    const auto& f = h.factors()[i];
    r.lines.push_back({r.positions[f.front()], r.positions[f.back()]});
    for (size_t t = 0; t + 1 < f.size(); ++t) r.assignment[Edge(f[t], f[t + 1])] = i;
  }
  return r;
}

inline StretchVerdict is_stretchable(const TemplateGraph& h, int d, const StretchOptions& opt = {}) {
  validate_template(h);
  StretchVerdict out;
  out.budget_spent = std::max(0, opt.realize.budget);
  if (auto r = realize(h, d, opt.realize)) {
    out.answer = Answer::Yes;
    out.realization = std::move(r);
    return out;
  }
  auto cmd = solver_command(opt.solver);
  if (!cmd) {
    out.reason = "numeric search exhausted its budget and no external solver is configured";
    return out;
  }
  auto res = run_solver(*cmd, to_solver_text(emit_stretch_formula(h, d)) + "(get-model)\n");
  if (res.status == SolverStatus::Unsat) {
    out.answer = Answer::No;
    out.certificate = "unsat from '" + *cmd + "'";
    return out;
  }
  if (res.status == SolverStatus::Unknown) {
    out.reason = "external solver answered unknown";
    return out;
  }
  auto r = realization_from_model(h, d, res);
  if (!r) {
    out.reason = "solver model is not rational";
    return out;
  }
  bool distinct = true;
  for (size_t i = 0; i < r->lines.size(); ++i)
    for (size_t j = i + 1; j < r->lines.size(); ++j) distinct = distinct && !same_line(r->lines[i], r->lines[j]);
  if (!distinct || !verify_cover(h.graph(), *r).valid) {
    out.reason = "solver model failed exact verification";
    return out;
  }
  out.answer = Answer::Yes;
  out.realization = std::move(r);
  return out;
}

}  // namespace affcover
