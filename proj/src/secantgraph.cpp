#include "tropsec/secantgraph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropsec {

LinealityLattice lineality_lattice(const ExponentSequence& e) {
  LinealityLattice lin;
  lin.l1 = e.all_ones();
  lin.l2 = e.exponent_vector();
  return lin;
}

RayGraph SecantFan::to_graph() const {
  RayGraph g;
  g.ambient_dim = e.n() + 1;
  g.lineality = lin.generators();
  for (const auto& [l, v] : rays) g.add_node(l, v, l == NodeLabel::e(e[1]));
  for (const SecantCone& c : cones) g.add_edge(c.a, c.b, c.weight);
  return g;
}

Rat secant_cone_weight(const IntVec& x, const IntVec& y, const Rat& m_sigma,
                       const LinealityLattice& lin) {
  IntMatrix big = IntMatrix::from_cols({x, y, lin.l1, lin.l2});
  if (rank(big) != 4) throw MathError("secant_cone_weight: rank < 4");
  Int g4 = gcd_of_maximal_minors(big, 4);
  Int g2 = gcd_of_maximal_minors(IntMatrix::from_cols({x, y}), 2);
  return Rat(1, 2) * m_sigma * Rat(g4) / Rat(g2);
}

namespace {

// Reduced-graph label for a master node: D keeps its label, h collapses to
// E, and the ending/beginning subsets collapse to E_{i_1} / E_{i_{n-1}}.
// Unexpected coincidences are hard errors.
std::map<IntVec, NodeLabel> build_ray_label_map(
    const TropicalFan& mf, const ExponentSequence& e, const Quotient& q,
    std::map<NodeLabel, IntVec>* reduced_vectors) {
  const std::size_t n = e.n();
  std::map<IntVec, NodeLabel> label_of_ray;
  auto insert_primary = [&](const NodeLabel& l, const IntVec& v) {
    IntVec key = q.primitive_ray(v);
    auto it = label_of_ray.find(key);
    if (it != label_of_ray.end()) {
      throw MathError("unexpected ray identification: " + l.str() + " vs " +
                      it->second.str());
    }
    label_of_ray.emplace(key, l);
    (*reduced_vectors)[l] = v;
  };
  for (std::size_t j = 0; j <= n; ++j) {
    insert_primary(NodeLabel::d(e[j]), mf.rays.at(NodeLabel::d(e[j])));
  }
  for (std::size_t j = 1; j <= n - 1; ++j) {
    insert_primary(NodeLabel::e(e[j]), mf.rays.at(NodeLabel::e(e[j])));
  }
  // h_{i_j} must coincide with E_{i_j} modulo the lineality
  for (std::size_t j = 1; j <= n - 1; ++j) {
    IntVec key = q.primitive_ray(mf.rays.at(NodeLabel::h(e[j])));
    auto it = label_of_ray.find(key);
    if (it == label_of_ray.end() || it->second != NodeLabel::e(e[j])) {
      throw MathError("h node failed to collapse onto E: j=" +
                      std::to_string(j));
    }
  }
  IntVec ending(e.e.begin() + 1, e.e.end());
  IntVec beginning(e.e.begin(), e.e.end() - 1);
  for (const auto& [l, v] : mf.rays) {
    if (l.kind != NodeLabel::Kind::F) continue;
    if (l.subset.size() == n + 1) continue;  // F_full lies in the lineality
    IntVec key = q.primitive_ray(v);
    auto it = label_of_ray.find(key);
    if (it == label_of_ray.end()) {
      label_of_ray.emplace(key, l);
      (*reduced_vectors)[l] = v;
    } else if (l.subset == ending && it->second == NodeLabel::e(e[1])) {
      // i_1 * F_e = E_{i_1}
    } else if (l.subset == beginning && it->second == NodeLabel::e(e[n - 1])) {
      // (i_n - i_{n-1}) * F_b = E_{i_{n-1}} modulo lineality
    } else {
      throw MathError("unexpected F identification: " + l.str() + " vs " +
                      it->second.str());
    }
  }
  return label_of_ray;
}

bool is_expected_degenerate(const EdgeKey& k, const ExponentSequence& e,
                            std::size_t n) {
  const NodeLabel d0 = NodeLabel::d(e[0]);
  const NodeLabel dn = NodeLabel::d(e[n]);
  const NodeLabel h1 = NodeLabel::h(e[1]);
  const NodeLabel en1 = NodeLabel::e(e[n - 1]);
  const NodeLabel hn1 = NodeLabel::h(e[n - 1]);
  if (k == make_edge_key(d0, h1)) return true;
  if (k == make_edge_key(dn, en1)) return true;
  if (k == make_edge_key(dn, hn1)) return true;
  // every edge at F_full
  if (k.first.kind == NodeLabel::Kind::F && k.first.subset.size() == n + 1) {
    return true;
  }
  if (k.second.kind == NodeLabel::Kind::F && k.second.subset.size() == n + 1) {
    return true;
  }
  return false;
}

}  // namespace

SecantFan reduce_master_mod_lineality(const TropicalFan& mf,
                                      const ExponentSequence& e) {
  const std::size_t n = e.n();
  SecantFan fan;
  fan.e = e;
  fan.lin = lineality_lattice(e);
  fan.quotient = Quotient(fan.lin.generators(), n + 1);

  std::map<NodeLabel, IntVec> reduced_vectors;
  std::map<IntVec, NodeLabel> label_of_ray =
      build_ray_label_map(mf, e, fan.quotient, &reduced_vectors);

  std::map<EdgeKey, SecantCone> grouped;
  for (const auto& [labels, weight] : mf.cones) {
    const IntVec& x = mf.rays.at(labels[0]);
    const IntVec& y = mf.rays.at(labels[1]);
    IntMatrix span =
        IntMatrix::from_cols({x, y, fan.lin.l1, fan.lin.l2});
    if (rank(span) < 4) {
      if (!is_expected_degenerate(make_edge_key(labels[0], labels[1]), e, n)) {
        throw MathError("unexpected degenerate master cone " +
                        labels[0].str() + "--" + labels[1].str());
      }
      continue;
    }
    NodeLabel la = label_of_ray.at(fan.quotient.primitive_ray(x));
    NodeLabel lb = label_of_ray.at(fan.quotient.primitive_ray(y));
    if (la == lb) {
      throw MathError("master cone collapsed to a ray: " + labels[0].str() +
                      "--" + labels[1].str());
    }
    Rat contribution = secant_cone_weight(x, y, weight, fan.lin);
    EdgeKey key = make_edge_key(la, lb);
    auto it = grouped.find(key);
    if (it == grouped.end()) {
      SecantCone c;
      c.a = key.first;
      c.b = key.second;
      c.weight = contribution;
      c.provenance = {{make_edge_key(labels[0], labels[1]), contribution}};
      grouped.emplace(key, std::move(c));
    } else {
      it->second.weight += contribution;
      it->second.provenance.push_back(
          {make_edge_key(labels[0], labels[1]), contribution});
    }
  }
  for (auto& [key, cone] : grouped) {
    if (boost::multiprecision::denominator(cone.weight) != 1) {
      throw MathError("half-integral weight on reduced cone " +
                      cone.a.str() + "--" + cone.b.str() + ": " +
                      boost::multiprecision::numerator(cone.weight).str() + "/" +
                      boost::multiprecision::denominator(cone.weight).str());
    }
    fan.rays[cone.a] = reduced_vectors.at(cone.a);
    fan.rays[cone.b] = reduced_vectors.at(cone.b);
    fan.cones.push_back(cone);
  }
  return fan;
}

namespace {

// gcd over |i_a - i_b| for all pairs a < b drawn from `values`; 0 when there
// are fewer than two values (the empty-gcd convention).
Int gcd_pairwise_differences(const IntVec& values) {
  Int g = 0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      g = gcd_int(g, abs_int(values[a] - values[b]));
    }
  }
  return g;
}

RayGraph closed_form_secant_graph(const ExponentSequence& e) {
  const std::size_t n = e.n();
  RayGraph g;
  g.ambient_dim = n + 1;
  LinealityLattice lin = lineality_lattice(e);
  g.lineality = lin.generators();
  for (std::size_t j = 0; j <= n; ++j) {
    g.add_node(NodeLabel::d(e[j]), unit_vector(n + 1, j));
  }
  for (std::size_t j = 1; j <= n - 1; ++j) {
    IntVec v(n + 1);
    for (std::size_t k = 0; k <= n; ++k) v[k] = k < j ? e[k] : e[j];
    g.add_node(NodeLabel::e(e[j]), v, j == 1);
  }
  // (i) chain edges
  for (std::size_t j = 1; j + 1 <= n - 1; ++j) {
    Int tail = 0;  // gcd over j < t < n of (i_n - i_t)
    for (std::size_t t = j + 1; t <= n - 1; ++t) {
      tail = gcd_int(tail, e[n] - e[t]);
    }
    g.add_edge(NodeLabel::e(e[j]), NodeLabel::e(e[j + 1]),
               Rat(e.gcd_range_incl(1, j) * tail));
  }
  // (ii) spoke edges
  for (std::size_t j = 1; j <= n - 1; ++j) {
    Int left = e.gcd_range_incl(1, j - 1);  // 0 when j = 1 (empty)
    Int right_diffs = 0;
    for (std::size_t l = j + 1; l <= n; ++l) {
      right_diffs = gcd_int(right_diffs, e[l] - e[j]);
    }
    Int first = left * right_diffs;
    Int left_diffs = 0;
    for (std::size_t k = 0; k < j; ++k) {
      left_diffs = gcd_int(left_diffs, e[j] - e[k]);
    }
    Int second = left_diffs * e.gcd_range_incl(j + 1, n);
    g.add_edge(NodeLabel::d(e[j]), NodeLabel::e(e[j]),
               Rat(gcd_int(first, second)));
  }
  // (iii) star edges over proper progression subsets
  std::vector<ProgressionSubset> subsets = enumerate_progression_subsets(e);
  for (const ProgressionSubset& ps : subsets) {
    if (ps.is_full(n)) continue;
    IntVec v(n + 1, 0);
    for (std::size_t j : ps.indices) v[j] = 1;
    NodeLabel f = NodeLabel::f(ps.members);
    g.add_node(f, v);
    std::set<Int> member_set(ps.members.begin(), ps.members.end());
    IntVec complement;
    for (std::size_t j = 0; j <= n; ++j) {
      if (!member_set.count(e[j])) complement.push_back(e[j]);
    }
    for (std::size_t j : ps.indices) {
      IntVec inside;
      for (const Int& m : ps.members) {
        if (m != e[j]) inside.push_back(m);
      }
      Int inner = gcd_int(gcd_pairwise_differences(complement),
                          gcd_pairwise_differences(inside));
      g.add_edge(f, NodeLabel::d(e[j]),
                 Rat(ps.phi_sum) * Rat(inner) / Rat(2));
    }
  }
  // identifications of the ending/beginning subsets
  IntVec ending(e.e.begin() + 1, e.e.end());
  IntVec beginning(e.e.begin(), e.e.end() - 1);
  if (g.has_node(NodeLabel::f(ending))) {
    g.identify_nodes(NodeLabel::f(ending), NodeLabel::e(e[1]));
  }
  if (g.has_node(NodeLabel::f(beginning))) {
    g.identify_nodes(NodeLabel::f(beginning), NodeLabel::e(e[n - 1]));
  }
  g.assert_integral_weights();
  return g;
}

}  // namespace

RayGraph build_tropical_secant_graph(const ExponentSequence& e,
                                     WeightMode mode) {
  if (e.n() < 4) throw std::invalid_argument("secant constructions require n >= 4");
  if (mode == WeightMode::ClosedForm) return closed_form_secant_graph(e);
  return reduce_master_mod_lineality(master_fan(e), e).to_graph();
}

DualConstructionReport compare_dual_constructions(const ExponentSequence& e) {
  DualConstructionReport rep;
  RayGraph lattice = build_tropical_secant_graph(e, WeightMode::LatticeIndex);
  RayGraph closed = build_tropical_secant_graph(e, WeightMode::ClosedForm);
  Quotient q(lattice.lineality, e.n() + 1);

  auto node_rays = [&](const RayGraph& g) {
    std::map<NodeLabel, IntVec> m;
    for (const auto& [l, v] : g.nodes()) m[l] = q.primitive_ray(v);
    return m;
  };
  std::map<NodeLabel, IntVec> lr = node_rays(lattice), cr = node_rays(closed);
  if (lr != cr) {
    rep.structurally_equal = false;
    rep.detail = "node sets differ between the two constructions";
    return rep;
  }
  std::set<EdgeKey> le, ce;
  for (const auto& [k, w] : lattice.edges()) le.insert(k);
  for (const auto& [k, w] : closed.edges()) ce.insert(k);
  if (le != ce) {
    rep.structurally_equal = false;
    std::string missing;
    for (const EdgeKey& k : le) {
      if (!ce.count(k)) missing += " lattice-only:" + k.first.str() + "--" + k.second.str();
    }
    for (const EdgeKey& k : ce) {
      if (!le.count(k)) missing += " closed-only:" + k.first.str() + "--" + k.second.str();
    }
    rep.detail = "edge sets differ:" + missing;
    return rep;
  }
  for (const auto& [k, lw] : lattice.edges()) {
    const Rat& cw = closed.edges().at(k);
    if (lw != cw) {
      bool spoke = (k.first.kind == NodeLabel::Kind::D &&
                    k.second.kind == NodeLabel::Kind::E &&
                    k.first.value == k.second.value) ||
                   (k.first.kind == NodeLabel::Kind::E &&
                    k.second.kind == NodeLabel::Kind::D &&
                    k.first.value == k.second.value);
      rep.diffs.push_back({k, lw, cw, spoke});
    }
  }
  return rep;
}

SecantFan secant_fan(const ExponentSequence& e) {
  DualConstructionReport rep = compare_dual_constructions(e);
  if (!rep.ok()) {
    std::string msg = "dual-construction mismatch: " + rep.detail;
    for (const auto& d : rep.diffs) {
      if (!d.flagged) {
        msg += " edge " + d.edge.first.str() + "--" + d.edge.second.str() +
               " lattice=" + boost::multiprecision::numerator(d.lattice_weight).str() +
               " closed=" + boost::multiprecision::numerator(d.closed_weight).str();
      }
    }
    throw MathError(msg);
  }
  return reduce_master_mod_lineality(master_fan(e), e);
}

SecantComplex secant_complex(const ExponentSequence& e) {
  const std::size_t n = e.n();
  SecantComplex sc;
  for (std::size_t k = 1; k <= n - 1; ++k) {
    RatVec v(n + 1, Rat(0));
    for (std::size_t j = 1; j <= k; ++j) v[j] = Rat(e[j]);
    for (std::size_t j = k + 1; j <= n - 1; ++j) {
      v[j] = Rat(e[k]) * Rat(e[n] - e[j]) / Rat(e[n] - e[k]);
    }
    sc.vertices.push_back(std::move(v));
  }
  return sc;
}

}  // namespace tropsec
