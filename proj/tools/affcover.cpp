#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "affcover/fpt.hpp"
#include "affcover/formula.hpp"
#include "affcover/graph_io.hpp"
#include "affcover/kernel.hpp"
#include "affcover/realization_io.hpp"
#include "affcover/reductions.hpp"
#include "affcover/weak.hpp"

using namespace affcover;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << text;
}

int exit_for(Answer a) { return a == Answer::Yes ? 0 : a == Answer::No ? 1 : 2; }

std::string format_partition(const WeakCoverResult& r) {
  std::ostringstream os;
  os << "value " << r.value << '\n';
  for (size_t i = 0; i < r.partition.size(); ++i) {
    os << "part " << i + 1 << ':';
    for (int v : r.partition[i]) os << ' ' << v + 1;
    os << '\n';
  }
  return os.str();
}

// --- SVG -------------------------------------------------------------------

struct Box {
  double x0, y0, x1, y1;
};

// Clip the infinite line through p, q to the box (Liang-Barsky).
std::optional<std::array<double, 4>> clip(double px, double py, double qx, double qy, const Box& b) {
  double dx = qx - px, dy = qy - py;
  double lo = -1e300, hi = 1e300;
  auto edge = [&](double p, double q) {
    if (p == 0) return q >= 0;
    double t = q / p;
    if (p < 0) lo = std::max(lo, t);
    else hi = std::min(hi, t);
    return true;
  };
  if (!edge(-dx, px - b.x0) || !edge(dx, b.x1 - px) || !edge(-dy, py - b.y0) || !edge(dy, b.y1 - py)) return std::nullopt;
  if (lo > hi) return std::nullopt;
  return std::array<double, 4>{px + lo * dx, py + lo * dy, px + hi * dx, py + hi * dy};
}

template <class S>
std::string render_svg(const Graph& g, const Realization<S>& r) {
  if (r.dim != 2) throw Error(ErrorCode::InvalidArgument, "draw supports planar (2D) realizations only");
  std::vector<std::array<double, 2>> p;
  for (const auto& v : r.positions) p.push_back({to_double(v[0]), to_double(v[1])});
  Box b{0, 0, 0, 0};
  if (!p.empty()) b = {p[0][0], p[0][1], p[0][0], p[0][1]};
  for (const auto& q : p) b = {std::min(b.x0, q[0]), std::min(b.y0, q[1]), std::max(b.x1, q[0]), std::max(b.y1, q[1])};
  double w = std::max(b.x1 - b.x0, 1e-9), h = std::max(b.y1 - b.y0, 1e-9);
  double span = std::max(w, h);
  b = {b.x0 - 0.1 * span, b.y0 - 0.1 * span, b.x1 + 0.1 * span, b.y1 + 0.1 * span};
  const double size = 600.0;
  double scale = size / std::max(b.x1 - b.x0, b.y1 - b.y0);
  auto X = [&](double x) { return (x - b.x0) * scale; };
  auto Y = [&](double y) { return (b.y1 - y) * scale; };
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << X(b.x1) << "\" height=\"" << Y(b.y0) << "\" viewBox=\"0 0 "
     << X(b.x1) << ' ' << Y(b.y0) << "\">\n";
  for (size_t i = 0; i < r.lines.size(); ++i) {
    const auto& l = r.lines[i];
    auto c = clip(to_double(l.p[0]), to_double(l.p[1]), to_double(l.q[0]), to_double(l.q[1]), b);
    if (!c) continue;
    os << "  <line class=\"cover\" x1=\"" << X((*c)[0]) << "\" y1=\"" << Y((*c)[1]) << "\" x2=\"" << X((*c)[2])
       << "\" y2=\"" << Y((*c)[3]) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  }
  for (const auto& e : g.edges())
    os << "  <line class=\"edge\" x1=\"" << X(p[e.u][0]) << "\" y1=\"" << Y(p[e.u][1]) << "\" x2=\"" << X(p[e.v][0])
       << "\" y2=\"" << Y(p[e.v][1]) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (size_t v = 0; v < p.size(); ++v)
    os << "  <circle cx=\"" << X(p[v][0]) << "\" cy=\"" << Y(p[v][1]) << "\" r=\"4\" fill=\"black\"><title>" << v + 1
       << "</title></circle>\n";
  os << "</svg>\n";
  return os.str();
}

bool uses_sqrt5(const std::string& text) { return text.find("sqrt5") != std::string::npos; }

template <class S>
int verify_text(const Graph& g, const std::string& text, bool quiet) {
  auto r = parse_realization<S>(text);
  auto rep = verify_cover(g, r);
  if (rep.valid) {
    std::cout << "valid lines " << r.lines.size() << " dim " << r.dim << '\n';
    return 0;
  }
  std::cout << "invalid\n";
  if (!quiet)
    for (const auto& v : rep.violations) std::cout << "  " << v << '\n';
  return 1;
}

template <class S>
int draw_text(const Graph& g, const std::string& text, const std::string& out) {
  auto r = parse_realization<S>(text);
  auto rep = verify_cover(g, r);
  if (!rep.valid) {
    std::cerr << "realization does not verify: " << rep.violations.front() << '\n';
    return 1;
  }
  emit(out, render_svg(g, r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine cover numbers of graphs: kernels, decisions, formulas and gadgets."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  int k = 1, dim = 2, budget = RealizeOptions{}.budget;
  std::uint64_t seed = 0;
  std::string input = "-", output, solver, param, aux;
  int extra = 1;
  bool quiet = false;
  auto add_common = [&](CLI::App* s) {
    s->add_option("input", input, "input file, '-' for stdin")->capture_default_str();
    s->add_option("-o,--output", output, "output file (default stdout)");
  };
  auto add_search = [&](CLI::App* s) {
    s->add_option("--k", k, "number of lines")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--dim", dim, "ambient dimension")->check(CLI::IsMember({2, 3}))->capture_default_str();
    s->add_option("--seed", seed, "seed of the numeric realization restarts")->capture_default_str();
    s->add_option("--budget", budget, "numeric restarts per template")->check(CLI::NonNegativeNumber)->capture_default_str();
    s->add_option("--solver", solver, "external solver command (default $AFFCOVER_SOLVER)");
  };

  auto* kern = app.add_subcommand("kernelize", "reduce a graph to its kernel");
  add_common(kern);
  kern->add_option("--k", k, "number of lines")->check(CLI::PositiveNumber)->capture_default_str();
  kern->add_option("--dim", dim, "ambient dimension")->check(CLI::IsMember({2, 3}))->capture_default_str();

  auto* decide = app.add_subcommand("decide", "decide whether k lines suffice");
  add_common(decide);
  add_search(decide);
  auto* describe = app.add_subcommand("describe", "decide and print the description and drawing");
  add_common(describe);
  add_search(describe);

  auto* formula = app.add_subcommand("emit-formula", "emit the existential formula in SMT-LIB");
  add_common(formula);
  formula->add_option("--param", param, "cover number")->required()->check(CLI::IsMember({"rho12", "rho13", "rho23"}));
  formula->add_option("--k", k, "number of lines or planes")->check(CLI::PositiveNumber)->capture_default_str();

  auto* weak = app.add_subcommand("weak", "weak cover number by exact search");
  add_common(weak);
  weak->add_option("--param", param, "weak cover number")->required()->check(CLI::IsMember({"pi13", "pi23"}));

  auto* gen = app.add_subcommand("gen", "generate gadget graphs and instances");
  std::string kind;
  gen->add_option("kind", kind, "what to generate")
      ->required()
      ->check(CLI::IsMember({"tails", "perles", "ilgadget", "onein3", "planecover", "blocking"}));
  gen->add_option("input", input, "input graph or formula (tails, onein3, planecover, blocking)")->capture_default_str();
  gen->add_option("-o,--output", output, "output file (default stdout)");
  gen->add_option("--realization", aux, "perles: also write the bundled realization here");
  gen->add_option("--extra", extra, "blocking: number of apex pairs")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check a realization against a graph");
  std::string graph_path, real_path;
  verify->add_option("graph", graph_path, "graph file")->required();
  verify->add_option("realization", real_path, "realization file")->required();
  verify->add_flag("-q,--quiet", quiet, "omit the violation list");

  auto* draw = app.add_subcommand("draw", "render a verified planar realization as SVG");
  draw->add_option("graph", graph_path, "graph file")->required();
  draw->add_option("realization", real_path, "realization file")->required();
  draw->add_option("-o,--output", output, "SVG file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    auto decide_query = [&]() {
      Graph g = parse_graph(slurp(input));
      DecideOptions opt;
      opt.stretch.realize.seed = seed;
      opt.stretch.realize.budget = budget;
      if (!solver.empty()) opt.stretch.solver = solver;
      return std::pair{g, decide_line_cover({g, k, dim}, opt)};
    };

    if (*kern) {
      auto r = kernelize(parse_graph(slurp(input)), k, dim);
      if (r.verdict == KernelVerdict::RejectedByCounts) std::cerr << "rejected: " << r.reason << '\n';
      std::ostringstream os;
      for (size_t v = 0; v < r.vertex_map.size(); ++v) os << "c map " << v + 1 << ' ' << r.vertex_map[v] + 1 << '\n';
      os << write_graph(r.h);
      emit(output, os.str());
      return 0;
    }
    if (*decide || *describe) {
      auto [g, dec] = decide_query();
      std::ostringstream os;
      os << "answer " << to_string(dec.answer) << '\n';
      if (!dec.reason.empty()) os << "reason " << dec.reason << '\n';
      if (dec.description) os << format_description(*dec.description);
      if (*describe) {
        if (dec.realization) os << write_realization(*dec.realization);
        for (const auto& t : dec.pending) os << "pending template with " << t.graph().order() << " vertices\n";
      }
      emit(output, os.str());
      return exit_for(dec.answer);
    }
    if (*formula) {
      Graph g = parse_graph(slurp(input));
      int d = param == "rho12" ? 2 : 3, l = param == "rho23" ? 2 : 1;
      emit(output, to_solver_text(emit_rho_formula(g, k, d, l)));
      return 0;
    }
    if (*weak) {
      Graph g = parse_graph(slurp(input));
      emit(output, format_partition(param == "pi13" ? linear_vertex_arboricity(g) : vertex_thickness(g)));
      return 0;
    }
    if (*gen) {
      if (kind == "tails") {
        emit(output, write_graph(add_tails(parse_graph(slurp(input)))));
      } else if (kind == "perles") {
        auto p = perles_graph();
        emit(output, write_named_graph(p.g, p.names));
        if (!aux.empty()) emit(aux, write_realization(p.realization));
      } else if (kind == "ilgadget") {
        emit(output, write_named_graph(intersection_line_gadget(), {"v1", "v2", "v3", "u1", "u2", "u3", "u4"}));
      } else if (kind == "onein3") {
        emit(output, write_sat_instance(build_one_in_three(parse_three_sat(slurp(input)))));
      } else {
        auto inst = build_plane_cover_instance(parse_sat_instance(slurp(input)));
        if (kind == "blocking") inst = blocking_gadget(std::move(inst), extra);
        emit(output, write_named_graph(inst.g, inst.names));
      }
      return 0;
    }
    if (*verify || *draw) {
      Graph g = parse_graph(slurp(graph_path));
      std::string text = slurp(real_path);
      if (*verify) return uses_sqrt5(text) ? verify_text<QSqrt5>(g, text, quiet) : verify_text<Rational>(g, text, quiet);
      return uses_sqrt5(text) ? draw_text<QSqrt5>(g, text, output) : draw_text<Rational>(g, text, output);
    }
  } catch (const FileError& e) {
    std::cerr << e.what() << '\n';
    return kExitNoInput;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
