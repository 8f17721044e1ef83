#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "periodforge/canonical_labeling.hpp"
#include "periodforge/enumerate.hpp"
#include "periodforge/error.hpp"
#include "periodforge/form_numeric.hpp"
#include "periodforge/graph_complex.hpp"
#include "periodforge/graph_io.hpp"
#include "periodforge/graph_poly.hpp"
#include "periodforge/integrate.hpp"
#include "periodforge/voronoi.hpp"
#include "periodforge/zeta.hpp"

namespace pf = periodforge;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitTargetMissed = 3;
constexpr const char* kSchemaVersion = "1";

struct Common {
  bool json_output = false;
  int threads = 0;
};

struct RunContext {
  std::string command;
  std::vector<std::string> arguments;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

json manifest(const RunContext& ctx, const json& extra) {
  json m = {{"command", ctx.command},
            {"arguments", ctx.arguments},
            {"tool_version", PERIODFORGE_VERSION},
            {"schema_version", kSchemaVersion}};
  for (const auto& [k, v] : extra.items()) m[k] = v;
  m["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
  return m;
}

json graph_json(const pf::Graph& g) {
  json vertices = json::array();
  for (int v = 0; v < g.num_vertices(); ++v) vertices.push_back({{"id", v + 1}, {"weight", g.weight(v)}});
  json edges = json::array();
  for (int e = 0; e < g.num_edges(); ++e) {
    edges.push_back({{"id", e + 1}, {"u", g.edge(e).u + 1}, {"v", g.edge(e).v + 1}});
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

std::string subset_text(std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (int e = 0; e < 64; ++e) {
    if (!(mask >> e & 1U)) continue;
    out += (first ? "" : ",") + std::to_string(e + 1);
    first = false;
  }
  return out + "}";
}

json subset_json(std::uint64_t mask) {
  json ids = json::array();
  for (int e = 0; e < 64; ++e) {
    if (mask >> e & 1U) ids.push_back(e + 1);
  }
  return ids;
}

std::vector<std::string> rational_strings(const std::vector<pf::Rational>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(pf::to_string(r));
  return out;
}

json matrix_json(const pf::RationalMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(pf::to_string(pf::Rational(m(i, j))));
    rows.push_back(row);
  }
  return rows;
}

std::string vector_text(const pf::LatticeVector& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? ", " : "") + std::to_string(x[i]);
  return out + ")";
}

std::vector<pf::Rational> parse_lengths(const std::string& text) {
  std::vector<pf::Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(pf::parse_rational(item));
  return out;
}

void emit(const Common& common, const json& payload, const std::string& text) {
  if (common.json_output) {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

struct MonteCarloArgs {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string sampler = "tropical";
  std::string target;
};

void add_monte_carlo_options(CLI::App* cmd, MonteCarloArgs& mc) {
  cmd->add_option("--samples", mc.samples, "Monte-Carlo sample count")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", mc.seed, "Random seed");
  cmd->add_option("--sampler", mc.sampler, "tropical or dirichlet")->check(CLI::IsMember({"tropical", "dirichlet"}));
  cmd->add_option("--target", mc.target, "Expected value, e.g. \"6*zeta(3)\"");
}

int report_estimate(const Common& common, const RunContext& ctx, const MonteCarloArgs& mc, const std::string& graph_name,
                    const std::string& integrand, const pf::IntegralEstimate& e) {
  json record = {{"graph", graph_name},   {"integrand", integrand},         {"samples", e.samples},
                 {"seed", e.seed},        {"sampler", e.sampler},           {"mean", e.mean},
                 {"stderr", e.standard_error}, {"orientation_sign", e.orientation}};
  std::ostringstream text;
  text.precision(10);
  text << integrand << " on " << graph_name << "\n"
       << "mean    " << e.mean << "\n"
       << "stderr  " << e.standard_error << "\n"
       << "samples " << e.samples << "  seed " << e.seed << "  sampler " << e.sampler << "\n";
  int code = 0;
  if (!mc.target.empty()) {
    const double target = static_cast<double>(pf::evaluate_expression(mc.target));
    const double z = pf::compare_constant(e, target);
    const bool pass = std::isfinite(z) ? std::abs(z) <= 3 : e.mean == target;
    record["target"] = mc.target;
    record["target_value"] = target;
    record["z"] = std::isfinite(z) ? json(z) : json(nullptr);
    record["pass"] = pass;
    text << "target  " << mc.target << " = " << target << "\n"
         << "z       " << z << (pass ? "  (pass)" : "  (MISSED)") << "\n";
    if (!pass) code = kExitTargetMissed;
  }
  record["manifest"] = manifest(ctx, {{"seed", mc.seed}, {"samples", mc.samples}, {"sampler", mc.sampler}});
  emit(common, record, text.str());
  return code;
}

pf::Sampler sampler_of(const std::string& name) {
  return name == "dirichlet" ? pf::Sampler::kDirichlet : pf::Sampler::kTropical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodforge: graph polynomials, Feynman periods, canonical integrals, graph complex homology, "
               "Voronoi cells"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PERIODFORGE_VERSION);
  Common common;
  app.add_flag("--json", common.json_output, "Emit JSON");
  app.add_option("--threads", common.threads, "Worker threads (default: PERIODFORGE_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::string graph_arg;
  std::string matrix_arg;
  MonteCarloArgs mc;
  std::string form_arg = "5";
  int loops = 3;
  bool allow_seven = false;
  int genus_arg = 2;
  std::string lengths_arg;
  std::string cell_arg;

  auto* psi = app.add_subcommand("psi", "Graph polynomial");
  auto* lap = app.add_subcommand("laplacian", "Graph Laplacian for the default cycle basis");
  auto* div = app.add_subcommand("divergences", "Divergent subgraphs");
  for (auto* cmd : {psi, lap, div}) cmd->add_option("graph", graph_arg, "Graph file or builtin name")->required();

  auto* residue = app.add_subcommand("residue", "Feynman residue by Monte-Carlo");
  residue->add_option("graph", graph_arg, "Graph file or builtin name")->required();
  add_monte_carlo_options(residue, mc);

  auto* canonical = app.add_subcommand("canonical", "Canonical integral by Monte-Carlo");
  canonical->add_option("graph", graph_arg, "Graph file or builtin name")->required();
  canonical->add_option("--form", form_arg, "Form degrees, e.g. 5 or 5,9");
  add_monte_carlo_options(canonical, mc);

  auto* gch = app.add_subcommand("gc-homology", "Homology of the graph complex at fixed loop order");
  gch->add_option("--loops", loops, "Loop order")->required();
  gch->add_flag("--allow-seven", allow_seven, "Permit 7 loops (slow, memory hungry)");

  auto* stable = app.add_subcommand("stable", "Stable weighted graphs of a genus");
  stable->add_option("--genus", genus_arg, "Genus")->required()->check(CLI::NonNegativeNumber);

  auto* minvec = app.add_subcommand("minvec", "Minimal vectors of a quadratic form");
  auto* cell = app.add_subcommand("cell", "Voronoi cell generators of a quadratic form");
  for (auto* cmd : {minvec, cell}) cmd->add_option("matrix", matrix_arg, "Matrix file")->required();

  auto* torelli = app.add_subcommand("torelli", "Laplacian at edge lengths");
  torelli->add_option("graph", graph_arg, "Graph file or builtin name")->required();
  torelli->add_option("--lengths", lengths_arg, "Comma-separated positive rationals, one per edge")->required();
  torelli->add_option("--cell", cell_arg, "Matrix file whose Voronoi cell is tested for membership");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  RunContext ctx;
  ctx.command = app.get_subcommands().front()->get_name();
  for (int i = 1; i < argc; ++i) ctx.arguments.emplace_back(argv[i]);

  try {
    if (psi->parsed()) {
      const pf::Graph g = pf::load_graph(graph_arg);
      const pf::MultilinearPoly p = pf::graph_polynomial(g);
      emit(common,
           {{"graph", graph_arg}, {"psi", p.to_json()}, {"text", p.to_string()}, {"manifest", manifest(ctx, json::object())}},
           p.to_string() + "\n");
    } else if (lap->parsed()) {
      const pf::Graph g = pf::load_graph(graph_arg);
      const pf::CycleBasis basis = pf::cycle_basis(g);
      const pf::LinearFormMatrix m = pf::laplacian(g, basis);
      json entries = json::array();
      for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(m.entry(i, j).to_string());
        entries.push_back(row);
      }
      json cycles = json::array();
      for (int i = 0; i < basis.size(); ++i) {
        json c = json::array();
        for (int e = 0; e < g.num_edges(); ++e) c.push_back(basis.cycles(i, e));
        cycles.push_back(c);
      }
      emit(common,
           {{"graph", graph_arg}, {"cycle_basis", cycles}, {"laplacian", entries}, {"manifest", manifest(ctx, json::object())}},
           m.to_string());
    } else if (div->parsed()) {
      const pf::Graph g = pf::load_graph(graph_arg);
      const auto subsets = pf::divergent_subgraphs(g);
      json list = json::array();
      std::string text;
      for (auto s : subsets) {
        list.push_back(subset_json(s));
        text += subset_text(s) + "\n";
      }
      if (subsets.empty()) text = "none (subdivergence-free)\n";
      emit(common, {{"graph", graph_arg}, {"divergent_subgraphs", list}, {"manifest", manifest(ctx, json::object())}},
           text);
    } else if (residue->parsed()) {
      const pf::Graph g = pf::load_graph(graph_arg);
      pf::IntegrationOptions opt{mc.samples, mc.seed, sampler_of(mc.sampler), common.threads, true};
      const pf::IntegralEstimate e = pf::integrate(pf::residue_integrand(g), opt);
      return report_estimate(common, ctx, mc, graph_arg, "residue 1/Psi^2", e);
    } else if (canonical->parsed()) {
      const pf::Graph g = pf::load_graph(graph_arg);
      const pf::FormSpec spec = pf::FormSpec::parse(form_arg);
      pf::IntegrationOptions opt{mc.samples, mc.seed, sampler_of(mc.sampler), common.threads, true};
      const pf::IntegralEstimate e = pf::integrate_canonical(g, spec, opt);
      return report_estimate(common, ctx, mc, graph_arg, "canonical " + spec.to_string(), e);
    } else if (gch->parsed()) {
      const pf::HomologyReport r = pf::homology(loops, allow_seven);
      json payload = r.to_json();
      payload["manifest"] = manifest(ctx, json::object());
      emit(common, payload, r.to_table());
    } else if (stable->parsed()) {
      const auto graphs = pf::enumerate_stable_weighted(genus_arg);
      json list = json::array();
      std::ostringstream text;
      text << graphs.size() << " stable weighted graphs of genus " << genus_arg << "\n";
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        list.push_back(graph_json(graphs[i]));
        text << "# graph " << i + 1 << "\n" << pf::format_graph(graphs[i]);
      }
      emit(common,
           {{"genus", genus_arg}, {"count", graphs.size()}, {"graphs", list}, {"manifest", manifest(ctx, json::object())}},
           text.str());
    } else if (minvec->parsed() || cell->parsed()) {
      const pf::QuadraticForm q = pf::read_quadratic_form_file(matrix_arg);
      if (minvec->parsed()) {
        const auto vectors = pf::minimal_vectors(q);
        std::string text = std::to_string(vectors.size()) + " minimal vectors, Q = " +
                           pf::to_string(q.value(vectors.front())) + "\n";
        for (const auto& v : vectors) text += vector_text(v) + "\n";
        emit(common,
             {{"matrix", matrix_json(q.matrix())},
              {"minimum", pf::to_string(q.value(vectors.front()))},
              {"minimal_vectors", vectors},
              {"manifest", manifest(ctx, json::object())}},
             text);
      } else {
        const pf::VoronoiCell c = pf::voronoi_cell(q);
        std::string text = std::to_string(c.generators.size()) + " generators\n";
        json gens = json::array();
        for (std::size_t i = 0; i < c.generators.size(); ++i) {
          pf::RationalMatrix m(c.generators[i].rows(), c.generators[i].cols());
          for (int r = 0; r < m.rows(); ++r) {
            for (int k = 0; k < m.cols(); ++k) m(r, k) = pf::Rational(c.generators[i](r, k));
          }
          text += "xi = " + vector_text(c.vectors[i]) + "\n" + pf::format_matrix(m);
          gens.push_back({{"xi", c.vectors[i]}, {"matrix", matrix_json(m)}});
        }
        emit(common, {{"matrix", matrix_json(q.matrix())}, {"generators", gens}, {"manifest", manifest(ctx, json::object())}},
             text);
      }
    } else if (torelli->parsed()) {
      const pf::Graph g = pf::load_graph(graph_arg);
      const pf::QuadraticForm x = pf::torelli_point(g, parse_lengths(lengths_arg));
      json payload = {{"graph", graph_arg}, {"lengths", lengths_arg}, {"matrix", matrix_json(x.matrix())}};
      std::string text = pf::format_matrix(x.matrix());
      if (!cell_arg.empty()) {
        const pf::VoronoiCell c = pf::voronoi_cell(pf::read_quadratic_form_file(cell_arg));
        const pf::ConeMembership m = pf::cone_membership(x, c);
        payload["in_cell"] = m.member;
        if (m.member) {
          payload["lambda"] = rational_strings(m.lambda);
          text += "in cell, lambda =";
          for (const auto& l : m.lambda) text += " " + pf::to_string(l);
        } else {
          payload["separator"] = rational_strings(m.separator);
          text += "not in cell, separator =";
          for (const auto& s : m.separator) text += " " + pf::to_string(s);
        }
        text += "\n";
      }
      payload["manifest"] = manifest(ctx, json::object());
      emit(common, payload, text);
    }
  } catch (const pf::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const pf::ComputationError& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
