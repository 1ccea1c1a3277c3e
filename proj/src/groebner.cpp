#include "tropsec/groebner.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <thread>

namespace tropsec {

namespace {

struct PairEvent {
  IntersectionResult result;
  EdgeKey a, b;
};

Cone edge_cone(const RayGraph& g, const EdgeKey& k) {
  return Cone{{g.node_vector(k.first), g.node_vector(k.second)}, g.lineality};
}

bool cone_subset_of(const Cone& inner, const Cone& outer) {
  for (const IntVec& r : inner.rays) {
    if (!cone_member(outer, r)) return false;
  }
  for (const IntVec& l : inner.lineality) {
    if (!cone_member(outer, l) || !cone_member(outer, scale(-1, l))) {
      return false;
    }
  }
  return true;
}

// Subset of exponent values represented by an edge endpoint pair, when the
// edge plays the role of an F_a D_j star edge. D-D edges are collapsed
// bivalent pair nodes; E endpoints may alias the ending/beginning subsets.
std::optional<IntVec> edge_subset(const RayGraph& g, const ExponentSequence& e,
                                  const EdgeKey& k, Int* d_value) {
  const NodeLabel *fside = nullptr, *dside = nullptr;
  if (k.first.kind == NodeLabel::Kind::D && k.second.kind == NodeLabel::Kind::D) {
    // pair edge: either endpoint can play the D role; caller disambiguates
    return std::nullopt;
  }
  if (k.first.kind == NodeLabel::Kind::D) {
    dside = &k.first;
    fside = &k.second;
  } else if (k.second.kind == NodeLabel::Kind::D) {
    dside = &k.second;
    fside = &k.first;
  } else {
    return std::nullopt;
  }
  if (d_value) *d_value = dside->value;
  if (fside->kind == NodeLabel::Kind::F) return fside->subset;
  return std::nullopt;
}

std::string crossing_tag(const RayGraph& g, const ExponentSequence& e,
                         const EdgeKey& a, const EdgeKey& b) {
  const std::size_t n = e.n();
  auto kindof = [&](const EdgeKey& k) -> std::string {
    auto is_e_like = [&](const NodeLabel& l) {
      return l.kind == NodeLabel::Kind::E ||
             (l.kind == NodeLabel::Kind::D && l.value == e[1]);
    };
    bool spoke = (k.first.kind == NodeLabel::Kind::D &&
                  k.second.kind == NodeLabel::Kind::E &&
                  k.first.value == k.second.value) ||
                 (k.second.kind == NodeLabel::Kind::D &&
                  k.first.kind == NodeLabel::Kind::E &&
                  k.first.value == k.second.value);
    if (!spoke && is_e_like(k.first) && is_e_like(k.second)) return "chain";
    // star edges: F-D, pair D-D, or an E alias of the ending/beginning F
    std::size_t size = 0;
    if (k.first.kind == NodeLabel::Kind::F) size = k.first.subset.size();
    else if (k.second.kind == NodeLabel::Kind::F) size = k.second.subset.size();
    else if (k.first.kind == NodeLabel::Kind::D &&
             k.second.kind == NodeLabel::Kind::D) {
      size = 2;
    } else if (k.first.kind == NodeLabel::Kind::E ||
               k.second.kind == NodeLabel::Kind::E) {
      // merged F_ending (size n) or F_beginning (size n) alias
      size = n;
    }
    return "star" + std::to_string(size);
  };
  std::string ka = kindof(a), kb = kindof(b);
  if (ka == "chain" || kb == "chain") {
    return "n" + std::to_string(n) + ":second-type";
  }
  if (ka > kb) std::swap(ka, kb);
  return "n" + std::to_string(n) + ":first-type(" + ka + "," + kb + ")";
}

}  // namespace

CrossingReport detect_crossings_in_graph(const RayGraph& g,
                                         const ExponentSequence& e,
                                         std::size_t threads) {
  CrossingReport report;
  Quotient q(g.lineality, g.ambient_dim);
  std::vector<EdgeKey> keys;
  for (const auto& [k, w] : g.edges()) keys.push_back(k);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::optional<PairEvent>> events(pairs.size());

  auto scan_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const auto& [i, j] = pairs[idx];
      // adjacent edges meet in the shared ray: still classified, since a
      // deeper intersection there would be a real event
      Cone ca = edge_cone(g, keys[i]);
      Cone cb = edge_cone(g, keys[j]);
      IntersectionResult ir = cones_intersection_dim(ca, cb);
      if (ir.kind == IntersectionKind::InternalCrossing ||
          ir.kind == IntersectionKind::PartialOverlap ||
          ir.kind == IntersectionKind::CompleteOverlap) {
        events[idx] = PairEvent{ir, keys[i], keys[j]};
      }
    }
  };
  if (threads <= 1 || pairs.size() < 64) {
    scan_range(0, pairs.size());
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    std::size_t chunk = (pairs.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() {
        try {
          scan_range(t * chunk, std::min(pairs.size(), (t + 1) * chunk));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  for (const auto& ev : events) {
    if (!ev) continue;
    if (ev->result.kind == IntersectionKind::CompleteOverlap) {
      throw MathError("unmerged complete overlap between " +
                      ev->a.first.str() + ev->a.second.str() + " and " +
                      ev->b.first.str() + ev->b.second.str());
    }
    if (ev->result.kind == IntersectionKind::PartialOverlap) {
      Cone ca = edge_cone(g, ev->a);
      Cone cb = edge_cone(g, ev->b);
      bool a_in_b = cone_subset_of(ca, cb);
      bool b_in_a = cone_subset_of(cb, ca);
      if (a_in_b == b_in_a) {
        throw MathError("non-nested partial overlap between " +
                        ev->a.first.str() + ev->a.second.str() + " and " +
                        ev->b.first.str() + ev->b.second.str());
      }
      PartialOverlapEvent poe;
      poe.outer = a_in_b ? ev->b : ev->a;
      poe.inner = a_in_b ? ev->a : ev->b;
      report.partial_overlaps.push_back(poe);
      continue;
    }
    // internal crossing: extract the unique ray of the intersection that is
    // transverse to the lineality
    std::set<IntVec> ray_classes;
    for (const IntVec& r : ev->result.intersection.rays) {
      IntVec p = q.project(r);
      if (!is_zero(p)) ray_classes.insert(make_primitive(p));
    }
    if (ray_classes.size() != 1) {
      throw MathError("internal crossing with ambiguous ray between " +
                      ev->a.first.str() + ev->a.second.str() + " and " +
                      ev->b.first.str() + ev->b.second.str());
    }
    CrossingNode node;
    node.point = q.lift(*ray_classes.begin());
    node.parent_a = ev->a;
    node.parent_b = ev->b;
    node.case_tag = crossing_tag(g, e, ev->a, ev->b);
    auto ca = cone_contains(edge_cone(g, ev->a), node.point);
    auto cb = cone_contains(edge_cone(g, ev->b), node.point);
    if (!ca || !cb) {
      throw MathError("crossing certificate verification failed at " +
                      vec_to_string(node.point));
    }
    node.cert_a = *ca;
    node.cert_b = *cb;
    report.internal_crossings.push_back(std::move(node));
  }
  return report;
}

CrossingReport detect_crossings(const SecantFan& fan, std::size_t threads) {
  return detect_crossings_in_graph(fan.to_graph(), fan.e, threads);
}

namespace {

// Does some detected crossing have a parent edge representing the star
// F_subset--D_dvalue (directly, via a collapsed pair node, or via the
// ending/beginning alias)?
bool crossing_with_parents(const RayGraph& g, const ExponentSequence& e,
                           const CrossingReport& rep, const IntVec& subset_a,
                           const Int& da, const IntVec& subset_b,
                           const Int& db) {
  auto matches = [&](const EdgeKey& k, const IntVec& subset, const Int& dv) {
    // direct F-D edge
    Int d_val;
    std::optional<IntVec> s = edge_subset(g, e, k, &d_val);
    if (s && *s == subset && d_val == dv) return true;
    // pair edge D-D
    if (subset.size() == 2 && k.first.kind == NodeLabel::Kind::D &&
        k.second.kind == NodeLabel::Kind::D) {
      IntVec pair = {k.first.value, k.second.value};
      std::sort(pair.begin(), pair.end());
      IntVec want = subset;
      std::sort(want.begin(), want.end());
      if (pair == want && (k.first.value == dv || k.second.value == dv)) {
        return true;
      }
    }
    // merged beginning/ending subsets appear as E--D edges
    const std::size_t n = e.n();
    IntVec ending(e.e.begin() + 1, e.e.end());
    IntVec beginning(e.e.begin(), e.e.end() - 1);
    auto e_alias = [&](const NodeLabel& l) {
      if (l.kind != NodeLabel::Kind::E) return IntVec{};
      if (l.value == e[1] && subset == ending) return ending;
      if (l.value == e[n - 1] && subset == beginning) return beginning;
      return IntVec{};
    };
    if (k.first.kind == NodeLabel::Kind::D && !e_alias(k.second).empty() &&
        k.first.value == dv) {
      return true;
    }
    if (k.second.kind == NodeLabel::Kind::D && !e_alias(k.first).empty() &&
        k.second.value == dv) {
      return true;
    }
    return false;
  };
  for (const CrossingNode& c : rep.internal_crossings) {
    if ((matches(c.parent_a, subset_a, da) && matches(c.parent_b, subset_b, db)) ||
        (matches(c.parent_a, subset_b, db) && matches(c.parent_b, subset_a, da))) {
      return true;
    }
  }
  return false;
}

bool subset_exists(const std::vector<ProgressionSubset>& subsets,
                   IntVec members) {
  std::sort(members.begin(), members.end());
  for (const ProgressionSubset& ps : subsets) {
    if (ps.members == members) return true;
  }
  return false;
}

void predict_clauses(const RayGraph& g, const ExponentSequence& e,
                     CrossingReport& report) {
  const std::size_t n = e.n();
  std::vector<ProgressionSubset> subsets = enumerate_progression_subsets(e);
  if (n == 5) {
    // clause family (i): j = 5, k = 0, i_4 + i_1 = i_2 + i_3
    if (e[4] + e[1] == e[2] + e[3]) {
      struct Option {
        IntVec a, ap;
      };
      std::vector<Option> options = {
          {{e[3], e[4], e[5]}, {e[0], e[1], e[3]}},
          {{e[2], e[4], e[5]}, {e[0], e[1], e[2]}}};
      for (const Option& o : options) {
        if (subset_exists(subsets, o.a) && subset_exists(subsets, o.ap)) {
          if (!crossing_with_parents(g, e, report, o.a, e[5], o.ap, e[0])) {
            report.warnings.push_back(
                "n=5 clause (i) predicted a crossing that was not detected");
          }
        }
      }
    }
    return;
  }
  if (n != 4) return;
  // first-type clause (x): {i_4,i_3,i_2} x {i_2,i_1,0} at D_{i_4}, D_0
  {
    IntVec a = {e[2], e[3], e[4]}, ap = {e[0], e[1], e[2]};
    if (subset_exists(subsets, a) && subset_exists(subsets, ap) &&
        !crossing_with_parents(g, e, report, a, e[4], ap, e[0])) {
      report.warnings.push_back("n=4 first-type clause (x) predicted but undetected");
    }
  }
  // first-type clause (xi): {i_4,i_3} x {i_1,i_0} at D_{i_4}, D_0
  {
    IntVec a = {e[3], e[4]}, ap = {e[0], e[1]};
    if (subset_exists(subsets, a) && subset_exists(subsets, ap) &&
        !crossing_with_parents(g, e, report, a, e[4], ap, e[0])) {
      report.warnings.push_back("n=4 first-type clause (xi) predicted but undetected");
    }
  }
  // second-type clauses (i)-(iv); strict inequality only, ties degenerate to
  // existing nodes
  struct SecondType {
    const char* name;
    IntVec subset;
    bool predicted;
  };
  std::vector<SecondType> clauses = {
      {"(i)", {e[1], e[2], e[3]}, e[1] * (e[4] - e[2]) > e[2] * (e[4] - e[3])},
      {"(ii)", {e[1], e[2], e[4]}, e[3] * (e[2] - e[1]) > e[2] * (e[4] - e[1])},
      {"(iii)", {e[1], e[2], e[3]}, e[4] * (e[2] - e[1]) > e[2] * (e[3] - e[1])},
      {"(iv)", {e[0], e[2], e[3]}, e[3] * (e[2] - e[1]) > e[2] * (e[4] - e[1])},
  };
  for (const SecondType& c : clauses) {
    if (!c.predicted || !subset_exists(subsets, c.subset)) continue;
    bool found = false;
    for (const CrossingNode& cr : report.internal_crossings) {
      if (cr.case_tag.find("second-type") != std::string::npos) {
        auto touches = [&](const EdgeKey& k) {
          auto has_subset = [&](const NodeLabel& l) {
            return l.kind == NodeLabel::Kind::F && l.subset == c.subset;
          };
          return has_subset(k.first) || has_subset(k.second);
        };
        if (touches(cr.parent_a) || touches(cr.parent_b)) found = true;
      }
    }
    if (!found) {
      report.warnings.push_back(std::string("n=4 second-type clause ") +
                                c.name + " predicted but undetected");
    }
  }
}

NodeLabel crossing_label(const Quotient& q, const IntVec& point,
                         const std::string& tag) {
  return NodeLabel::p("case:" + tag + ";at:" + vec_to_string(q.project(point)));
}

// Subdivides `edge` at the listed points (each strictly interior), keeping
// the original weight on every piece.
void subdivide_edge(RayGraph& g, const EdgeKey& edge,
                    std::vector<std::pair<Rat, NodeLabel>> points) {
  const Rat w = g.edges().at(edge);
  std::sort(points.begin(), points.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  g.remove_edge(edge.first, edge.second);
  NodeLabel prev = edge.first;
  for (const auto& [pos, label] : points) {
    if (label != prev) {
      g.add_edge(prev, label, w);
      prev = label;
    }
  }
  if (prev != edge.second) g.add_edge(prev, edge.second, w);
}

}  // namespace

RefineResult groebner_refine(const RayGraph& g_in, const ExponentSequence& e,
                             std::size_t threads) {
  const std::size_t n = e.n();
  RefineResult res;
  res.graph = g_in;
  if (n >= 6) {
    res.report = detect_crossings_in_graph(res.graph, e, threads);
    if (!res.report.internal_crossings.empty() ||
        !res.report.partial_overlaps.empty()) {
      throw MathError("unexpected crossing or overlap for n >= 6");
    }
    return res;
  }
  // n = 4: resolve partial overlaps first (none can occur for n = 5; the
  // detection pass enforces that below)
  std::size_t rounds = 0;
  while (true) {
    CrossingReport rep = detect_crossings_in_graph(res.graph, e, threads);
    if (rep.partial_overlaps.empty()) {
      res.report = std::move(rep);
      break;
    }
    if (n == 5) throw MathError("partial overlap detected for n = 5");
    if (++rounds > 100) throw ResourceError("partial-overlap surgery loop bound");
    const PartialOverlapEvent& ev = rep.partial_overlaps.front();
    // the two edges share a node; the inner edge's other endpoint lies in
    // the relative interior of the outer edge
    NodeLabel shared, inner_other;
    if (ev.inner.first == ev.outer.first || ev.inner.first == ev.outer.second) {
      shared = ev.inner.first;
      inner_other = ev.inner.second;
    } else if (ev.inner.second == ev.outer.first ||
               ev.inner.second == ev.outer.second) {
      shared = ev.inner.second;
      inner_other = ev.inner.first;
    } else {
      throw MathError("partial overlap without a shared node");
    }
    NodeLabel outer_other =
        ev.outer.first == shared ? ev.outer.second : ev.outer.first;
    Cone oc = edge_cone(res.graph, ev.outer);
    auto cert = cone_contains(oc, res.graph.node_vector(inner_other));
    if (!cert || cert->ray_coeffs[0] <= 0 || cert->ray_coeffs[1] <= 0) {
      throw MathError("partial overlap node not interior to the outer edge");
    }
    Rat w_outer = res.graph.edges().at(ev.outer);
    res.graph.remove_edge(ev.outer.first, ev.outer.second);
    res.graph.add_edge(outer_other, inner_other, w_outer);
    res.graph.add_edge(inner_other, shared, w_outer);  // merges into inner
  }
  // insert the internal crossings
  Quotient q(res.graph.lineality, res.graph.ambient_dim);
  std::map<IntVec, NodeLabel> existing_ray_labels;
  for (const auto& [l, v] : res.graph.nodes()) {
    existing_ray_labels[q.primitive_ray(v)] = l;
  }
  // collect subdivision points per edge
  std::map<EdgeKey, std::vector<std::pair<Rat, NodeLabel>>> per_edge;
  std::map<NodeLabel, IntVec> new_nodes;
  for (const CrossingNode& c : res.report.internal_crossings) {
    if (n == 5 && c.case_tag.find("second-type") != std::string::npos) {
      throw MathError("n=5 crossing outside the star families: " + c.case_tag);
    }
    IntVec ray = q.primitive_ray(c.point);
    NodeLabel label;
    auto it = existing_ray_labels.find(ray);
    if (it != existing_ray_labels.end()) {
      label = it->second;
    } else {
      label = crossing_label(q, c.point, c.case_tag);
      new_nodes[label] = c.point;
      existing_ray_labels[ray] = label;
    }
    for (const EdgeKey* parent : {&c.parent_a, &c.parent_b}) {
      if (label == parent->first || label == parent->second) continue;
      Cone pc = edge_cone(res.graph, *parent);
      auto cert = cone_contains(pc, c.point);
      if (!cert) throw MathError("crossing point escaped its parent cone");
      const Rat& alpha = cert->ray_coeffs[0];
      const Rat& beta = cert->ray_coeffs[1];
      if (alpha <= 0 || beta <= 0) continue;  // touches a node of this edge
      per_edge[*parent].emplace_back(beta / (alpha + beta), label);
    }
  }
  for (auto& [label, v] : new_nodes) res.graph.add_node(label, v);
  for (auto& [edge, points] : per_edge) {
    // the same point can arrive from several cone pairs; dedupe by label
    std::sort(points.begin(), points.end(),
              [](const auto& x, const auto& y) {
                return x.second < y.second;
              });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const auto& x, const auto& y) {
                               return x.second == y.second;
                             }),
                 points.end());
    subdivide_edge(res.graph, edge, points);
  }
  predict_clauses(res.graph, e, res.report);
  return res;
}

}  // namespace tropsec
