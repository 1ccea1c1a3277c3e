#include <CLI11.hpp>

#include "tropsec/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace tropsec;

struct RunConfig {
  std::vector<long long> exponents;
  std::uint64_t seed = 20250810;
  std::string weight_mode = "lattice-index";
  bool prune_bivalent = false;
  std::string format = "json";
  std::string output;
  std::string export_vertices;
  std::size_t threads = 1;
};

ExponentSequence sequence_of(const RunConfig& cfg) {
  IntVec raw;
  for (long long x : cfg.exponents) raw.push_back(Int(x));
  return normalize_exponents(raw).seq;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + cfg.output);
    out << text;
  }
}

std::string render_graph(const RunConfig& cfg, const RayGraph& g) {
  if (cfg.format == "dot") return to_dot(g);
  if (cfg.format == "text") {
    std::string s = "nodes " + std::to_string(g.node_count()) + " edges " +
                    std::to_string(g.edge_count()) + "\n";
    for (const auto& [k, w] : g.edges()) {
      s += k.first.str() + " -- " + k.second.str() + "  weight " +
           boost::multiprecision::numerator(w).str();
      if (boost::multiprecision::denominator(w) != 1) {
        s += "/" + boost::multiprecision::denominator(w).str();
      }
      s += "\n";
    }
    return s;
  }
  return to_json(g);
}

RayGraph secant_graph_for(const RunConfig& cfg, const ExponentSequence& e) {
  WeightMode mode = cfg.weight_mode == "closed-form" ? WeightMode::ClosedForm
                                                     : WeightMode::LatticeIndex;
  RayGraph g = build_tropical_secant_graph(e, mode);
  if (cfg.prune_bivalent) eliminate_bivalent_nodes(g);
  return g;
}

int run_master_graph(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  RayGraph g = build_master_graph(e);
  if (cfg.prune_bivalent) eliminate_bivalent_nodes(g);
  emit(cfg, render_graph(cfg, g));
  return 0;
}

int run_balance_check(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  BalanceReport rep = check_balancing(build_master_graph(e));
  for (const auto& nr : rep.nodes) {
    std::cout << nr.node.str() << ": " << (nr.balanced ? "balanced" : "UNBALANCED")
              << "\n";
  }
  std::cout << "balanced: " << (rep.all_balanced ? "true" : "false") << "\n";
  return rep.all_balanced ? 0 : 2;
}

int run_valuations(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  ValuationTable t = divisorial_valuations(e);
  std::ostringstream out;
  for (const auto& [l, v] : t.d) out << l.str() << " " << vec_to_string(v) << "\n";
  for (const auto& [l, v] : t.e_l) out << "E" << l.str() << " " << vec_to_string(v) << "\n";
  for (const auto& [l, v] : t.h_l) out << "h" << l.str() << " " << vec_to_string(v) << "\n";
  out << "H " << vec_to_string(t.h_cap) << "\n";
  out << "Dinf " << vec_to_string(t.d_infinity) << "\n";
  for (const auto& [l, v] : t.f) out << l.str() << " " << vec_to_string(v) << "\n";
  emit(cfg, out.str());
  return 0;
}

int run_secant_graph(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  if (cfg.weight_mode == "both") {
    DualConstructionReport rep = compare_dual_constructions(e);
    std::ostringstream out;
    out << "structurally_equal: " << (rep.structurally_equal ? "true" : "false")
        << "\n";
    for (const auto& d : rep.diffs) {
      out << d.edge.first.str() << "--" << d.edge.second.str()
          << " lattice=" << boost::multiprecision::numerator(d.lattice_weight).str()
          << " closed=" << boost::multiprecision::numerator(d.closed_weight).str()
          << (d.flagged ? " [documented discrepancy class]" : " [UNEXPECTED]")
          << "\n";
    }
    emit(cfg, out.str());
    return rep.ok() ? 0 : 2;
  }
  emit(cfg, render_graph(cfg, secant_graph_for(cfg, e)));
  return 0;
}

int run_secant_fan(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  SecantFan fan = secant_fan(e);
  TropicalFan tf;
  tf.ambient_dim = e.n() + 1;
  tf.lineality = fan.lin.generators();
  tf.rays = fan.rays;
  for (const SecantCone& c : fan.cones) tf.cones.push_back({{c.a, c.b}, c.weight});
  emit(cfg, to_json(tf));
  return 0;
}

int run_groebner_graph(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  RayGraph g = build_tropical_secant_graph(e);
  eliminate_bivalent_nodes(g);
  RefineResult res = groebner_refine(g, e, cfg.threads);
  for (const std::string& w : res.report.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  emit(cfg, render_graph(cfg, res.graph));
  return 0;
}

int run_secant_complex(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  emit(cfg, to_json(secant_complex(e)));
  return 0;
}

int run_newton_polytope(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  if (e.n() != 4) {
    throw std::invalid_argument("newton-polytope requires n = 4");
  }
  SecantFan fan = secant_fan(e);
  WeightedConeFan wf = fan_from_secant(fan);
  EnumerateOptions opt;
  opt.seed = cfg.seed;
  EnumerationResult en = enumerate_vertices(wf, opt);
  Polytope p = convex_hull(en.vertices, wf.lineality);
  if (!cfg.export_vertices.empty()) {
    std::ofstream out(cfg.export_vertices, std::ios::binary);
    out << vertex_matrix_text(p);
  }
  emit(cfg, to_json(p));
  return 0;
}

int run_chow_polytope(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  if (e.n() < 5) {
    throw std::invalid_argument("chow-polytope requires n >= 5");
  }
  EnumerateOptions opt;
  opt.seed = cfg.seed;
  ChowPolytopeResult res = chow_polytope(e, opt);
  ChowDegreeReport deg = chow_degree_report(res, e);
  std::cerr << "multidegree (" << deg.degree_ones.str() << ", "
            << deg.degree_weighted.str() << "); codim " << deg.codim.str()
            << "; ones/codim "
            << (deg.ones_divisible ? (deg.degree_ones / deg.codim).str()
                                   : std::string("non-integral"))
            << "; weighted/codim "
            << (deg.weighted_divisible
                    ? (deg.degree_weighted / deg.codim).str()
                    : std::string("non-integral"))
            << "\n";
  if (!cfg.export_vertices.empty()) {
    std::ofstream out(cfg.export_vertices, std::ios::binary);
    out << vertex_matrix_text(res.polytope);
  }
  emit(cfg, to_json(res.polytope));
  return 0;
}

int run_multidegree(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  EnumerateOptions opt;
  opt.seed = cfg.seed;
  std::pair<Int, Int> md;
  if (e.n() == 4) {
    WeightedConeFan wf = fan_from_secant(secant_fan(e));
    EnumerationResult en = enumerate_vertices(wf, opt);
    md = multidegree(convex_hull(en.vertices, wf.lineality), e);
  } else {
    md = chow_polytope(e, opt).degrees;
  }
  std::cout << "(" << md.first.str() << ", " << md.second.str() << ")\n";
  return 0;
}

int run_verify(const RunConfig& cfg) {
  ExponentSequence e = sequence_of(cfg);
  bool ok = true;
  auto line = [&](const std::string& what, bool pass) {
    std::cout << (pass ? "PASS " : "FAIL ") << what << "\n";
    ok = ok && pass;
  };
  RayGraph master = build_master_graph(e);
  line("master balancing", check_balancing(master).all_balanced);
  line("coarsening", check_coarsening(e).all_ok);
  DualConstructionReport dual = compare_dual_constructions(e);
  line("dual construction", dual.ok());
  SecantFan fan = secant_fan(e);
  RayGraph quotient_graph;
  {
    Quotient q(fan.lin.generators(), e.n() + 1);
    quotient_graph.ambient_dim = q.quotient_dim();
    for (const auto& [l, v] : fan.rays) {
      quotient_graph.add_node(l, q.primitive_ray(v));
    }
    for (const SecantCone& c : fan.cones) {
      quotient_graph.add_edge(c.a, c.b, c.weight);
    }
  }
  line("secant fan balanced in the quotient",
       check_balancing(quotient_graph).all_balanced);
  RayGraph g = fan.to_graph();
  eliminate_bivalent_nodes(g);
  RefineResult refined = groebner_refine(g, e, cfg.threads);
  line("groebner refinement certificates",
       !refined.graph.nodes().empty());
  for (const std::string& w : refined.report.warnings) {
    std::cout << "WARN " << w << "\n";
  }
  if (e.n() == 4) {
    WeightedConeFan wf = fan_from_secant(fan);
    EnumerateOptions opt;
    opt.seed = cfg.seed;
    EnumerationResult en = enumerate_vertices(wf, opt);
    Polytope p = convex_hull(en.vertices, wf.lineality);
    std::string why;
    line("round trip retropicalize = groebner fan",
         weighted_cone_sets_equal(retropicalize(p),
                                  fan_from_graph(refined.graph), &why));
    if (!why.empty()) std::cout << "  " << why << "\n";
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact tropical secant toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env_seed = std::getenv("TROPSEC_SEED")) {
    cfg.seed = std::strtoull(env_seed, nullptr, 10);
  }

  auto add_common = [&](CLI::App* cmd, bool with_seed = true) {
    cmd->add_option("-e,--exponents", cfg.exponents,
                    "exponent list, e.g. -e 30,45,55,78")
        ->required()
        ->delimiter(',');
    cmd->add_option("-o,--output", cfg.output, "output path (default stdout)");
    cmd->add_option("--format", cfg.format, "json|dot|text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    cmd->add_option("--threads", cfg.threads, "worker threads (default 1)");
    if (with_seed) {
      cmd->add_option("--seed", cfg.seed, "objective seed (TROPSEC_SEED)");
    }
  };

  CLI::App* master = app.add_subcommand("master-graph", "build the master graph");
  add_common(master);
  master->add_flag("--prune-bivalent", cfg.prune_bivalent);

  CLI::App* balance = app.add_subcommand("balance-check", "balancing at all nodes");
  add_common(balance);

  CLI::App* vals = app.add_subcommand("valuations", "divisorial valuation table");
  add_common(vals);

  CLI::App* sgraph = app.add_subcommand("secant-graph", "tropical secant graph");
  add_common(sgraph);
  sgraph->add_flag("--prune-bivalent", cfg.prune_bivalent);
  sgraph->add_option("--weight-mode", cfg.weight_mode,
                     "lattice-index|closed-form|both")
      ->check(CLI::IsMember({"lattice-index", "closed-form", "both"}));

  CLI::App* sfan = app.add_subcommand("secant-fan", "weighted secant fan");
  add_common(sfan);

  CLI::App* ggraph = app.add_subcommand("groebner-graph",
                                        "refined tropical secant graph");
  add_common(ggraph);

  CLI::App* scomplex = app.add_subcommand("secant-complex",
                                          "first tropical secant complex");
  add_common(scomplex);

  CLI::App* newton = app.add_subcommand("newton-polytope",
                                        "Newton polytope (n = 4)");
  add_common(newton);
  newton->add_option("--export-vertices", cfg.export_vertices,
                     "write the vertex matrix to a file");

  CLI::App* chow = app.add_subcommand("chow-polytope", "Chow polytope (n >= 5)");
  add_common(chow);
  chow->add_option("--export-vertices", cfg.export_vertices,
                   "write the vertex matrix to a file");

  CLI::App* mdeg = app.add_subcommand("multidegree", "multidegree pair");
  add_common(mdeg);

  CLI::App* verify = app.add_subcommand("verify", "full invariant suite");
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (master->parsed()) return run_master_graph(cfg);
    if (balance->parsed()) return run_balance_check(cfg);
    if (vals->parsed()) return run_valuations(cfg);
    if (sgraph->parsed()) return run_secant_graph(cfg);
    if (sfan->parsed()) return run_secant_fan(cfg);
    if (ggraph->parsed()) return run_groebner_graph(cfg);
    if (scomplex->parsed()) return run_secant_complex(cfg);
    if (newton->parsed()) return run_newton_polytope(cfg);
    if (chow->parsed()) return run_chow_polytope(cfg);
    if (mdeg->parsed()) return run_multidegree(cfg);
    if (verify->parsed()) return run_verify(cfg);
  } catch (const ResourceError& err) {
    std::cerr << "resource bound exceeded: " << err.what() << "\n";
    return 3;
  } catch (const MathError& err) {
    std::cerr << "mathematical consistency failure: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
