#include "tropsec/mastergraph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropsec {

NormalizeResult normalize_exponents(const IntVec& raw) {
  if (raw.empty()) throw std::invalid_argument("empty exponent list");
  for (const Int& x : raw) {
    if (x <= 0) throw std::invalid_argument("exponents must be positive");
  }
  std::vector<Int> sorted(raw.begin(), raw.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 2) {
    // a single exponent value: (1 : t^k : ... : t^k) collapses
    throw std::invalid_argument("curve degenerates to a point");
  }
  Int g = 0;
  for (const Int& x : sorted) g = gcd_int(g, x);
  NormalizeResult res;
  res.seq.e.push_back(0);
  for (const Int& x : sorted) res.seq.e.push_back(x / g);
  res.partition[0] = {};
  for (std::size_t j = 1; j < res.seq.e.size(); ++j) {
    std::vector<std::size_t> positions;
    for (std::size_t p = 0; p < raw.size(); ++p) {
      if (raw[p] / g == res.seq.e[j] && raw[p] % g == 0) positions.push_back(p);
    }
    res.partition[j] = positions;
  }
  return res;
}

std::vector<ProgressionSubset> enumerate_progression_subsets(
    const ExponentSequence& e) {
  const std::size_t n = e.n();
  const Int& top = e[n];
  std::map<IntVec, ProgressionSubset> by_members;
  for (Int r = 1; r <= top; ++r) {
    // residue classes are indexed by the members they catch; scan exponents
    std::map<Int, std::vector<std::size_t>> classes;
    for (std::size_t j = 0; j <= n; ++j) classes[e[j] % r].push_back(j);
    for (const auto& [u, idx] : classes) {
      if (idx.size() < 2) continue;
      IntVec members;
      for (std::size_t j : idx) members.push_back(e[j]);
      auto it = by_members.find(members);
      if (it == by_members.end()) {
        ProgressionSubset ps;
        ps.members = members;
        ps.indices = idx;
        ps.differences = {r};
        by_members.emplace(members, std::move(ps));
      } else {
        it->second.differences.push_back(r);
      }
    }
  }
  std::vector<ProgressionSubset> out;
  for (auto& [members, ps] : by_members) {
    ps.phi_sum = 0;
    for (const Int& r : ps.differences) ps.phi_sum += euler_phi(r);
    out.push_back(std::move(ps));
  }
  return out;
}

namespace {

IntVec e_node_vector(const ExponentSequence& e, std::size_t j) {
  // (0, i_1, ..., i_{j-1}, i_j, ..., i_j)
  const std::size_t n = e.n();
  IntVec v(n + 1);
  for (std::size_t k = 0; k <= n; ++k) v[k] = k < j ? e[k] : e[j];
  return v;
}

IntVec h_node_vector(const ExponentSequence& e, std::size_t j) {
  // (-i_j, ..., -i_j, -i_{j+1}, ..., -i_n)
  const std::size_t n = e.n();
  IntVec v(n + 1);
  for (std::size_t k = 0; k <= n; ++k) v[k] = k <= j ? -e[j] : -e[k];
  return v;
}

IntVec f_node_vector(const ExponentSequence& e, const ProgressionSubset& ps) {
  IntVec v(e.n() + 1, 0);
  for (std::size_t j : ps.indices) v[j] = 1;
  return v;
}

}  // namespace

RayGraph build_master_graph(const ExponentSequence& e) {
  const std::size_t n = e.n();
  if (n < 4) throw std::invalid_argument("secant constructions require n >= 4");
  RayGraph g;
  g.ambient_dim = n + 1;
  for (std::size_t j = 0; j <= n; ++j) {
    g.add_node(NodeLabel::d(e[j]), unit_vector(n + 1, j));
  }
  for (std::size_t j = 1; j <= n - 1; ++j) {
    g.add_node(NodeLabel::e(e[j]), e_node_vector(e, j), j == 1);
    g.add_node(NodeLabel::h(e[j]), h_node_vector(e, j));
  }
  // caterpillar G_{E,D}
  for (std::size_t j = 1; j <= n - 1; ++j) {
    g.add_edge(NodeLabel::d(e[j]), NodeLabel::e(e[j]),
               Rat(e.gcd_range_incl(1, j)));
  }
  for (std::size_t j = 1; j + 1 <= n - 1; ++j) {
    g.add_edge(NodeLabel::e(e[j]), NodeLabel::e(e[j + 1]),
               Rat(e.gcd_range_incl(1, j)));
  }
  g.add_edge(NodeLabel::d(e[n]), NodeLabel::e(e[n - 1]),
             Rat(e.gcd_range_incl(1, n - 1)));
  // caterpillar G_{h,D}
  g.add_edge(NodeLabel::d(e[0]), NodeLabel::h(e[1]), Rat(1));
  for (std::size_t j = 1; j <= n - 1; ++j) {
    g.add_edge(NodeLabel::d(e[j]), NodeLabel::h(e[j]),
               Rat(e.gcd_range_incl(j, n)));
  }
  for (std::size_t j = 1; j + 1 <= n - 1; ++j) {
    g.add_edge(NodeLabel::h(e[j]), NodeLabel::h(e[j + 1]),
               Rat(e.gcd_range_incl(j + 1, n)));
  }
  g.add_edge(NodeLabel::d(e[n]), NodeLabel::h(e[n - 1]), Rat(e[n]));
  // star graphs
  for (const ProgressionSubset& ps : enumerate_progression_subsets(e)) {
    NodeLabel f = NodeLabel::f(ps.members);
    g.add_node(f, f_node_vector(e, ps));
    for (std::size_t j : ps.indices) {
      g.add_edge(f, NodeLabel::d(e[j]), Rat(ps.phi_sum));
    }
  }
  g.assert_integral_weights();
  return g;
}

BalanceReport check_balancing(const RayGraph& g) {
  BalanceReport report;
  for (const auto& [label, w] : g.nodes()) {
    if (is_zero(w)) throw MathError("node with zero vector: " + label.str());
    RatVec sum(w.size(), Rat(0));
    for (const auto& [nb, weight] : g.neighbors(label)) {
      PrimitiveLift lift = primitive_lift(w, g.node_vector(nb));
      for (std::size_t i = 0; i < w.size(); ++i) {
        sum[i] += weight * Rat(lift.u[i]);
      }
    }
    IntVec isum(w.size());
    bool integral = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (boost::multiprecision::denominator(sum[i]) != 1) integral = false;
      else isum[i] = boost::multiprecision::numerator(sum[i]);
    }
    bool ok = integral && is_integer_multiple_of(isum, make_primitive(w));
    report.nodes.push_back({label, ok, integral ? isum : IntVec{}});
    report.all_balanced = report.all_balanced && ok;
  }
  return report;
}

ValuationTable divisorial_valuations(const ExponentSequence& e) {
  const std::size_t n = e.n();
  ValuationTable t;
  t.n = n;
  for (std::size_t j = 0; j <= n; ++j) {
    t.d[NodeLabel::d(e[j])] = unit_vector(n + 1, j);
  }
  t.h_cap = IntVec(n + 1, Int(-1));
  t.d_infinity = IntVec(n + 1, 0);
  for (std::size_t j = 0; j <= n; ++j) {
    t.d_infinity[j] = e[j] < 2 ? Int(-1) : -e[j];
  }
  for (Int l = 1; l <= e[n - 1]; ++l) {
    IntVec v(n + 1);
    for (std::size_t j = 0; j <= n; ++j) v[j] = l <= e[j] ? l : e[j];
    t.e_l[l] = v;
  }
  for (Int l = 2; l <= e[n]; ++l) {
    IntVec v(n + 1);
    for (std::size_t j = 0; j <= n; ++j) v[j] = e[j] < l ? -l : -e[j];
    t.h_l[l] = v;
  }
  for (const ProgressionSubset& ps : enumerate_progression_subsets(e)) {
    t.f[NodeLabel::f(ps.members)] = f_node_vector(e, ps);
  }
  return t;
}

namespace {

bool vectors_equal_str(const IntVec& a, const IntVec& b, std::string* why) {
  if (a == b) return true;
  if (why) *why = vec_to_string(a) + " != " + vec_to_string(b);
  return false;
}

RatVec convex_combo(const IntVec& x, const IntVec& y, const Rat& a,
                    const Rat& b) {
  RatVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = a * Rat(x[i]) + b * Rat(y[i]);
  }
  return out;
}

bool equals_rat(const IntVec& v, const RatVec& r) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (Rat(v[i]) != r[i]) return false;
  }
  return true;
}

}  // namespace

CoarseningReport check_coarsening(const ExponentSequence& e) {
  const std::size_t n = e.n();
  CoarseningReport rep;
  ValuationTable t = divisorial_valuations(e);

  // (i) consecutive E cones intersect exactly in the shared ray
  for (std::size_t j = 1; j + 1 <= n - 1; ++j) {
    for (Int l = e[j]; l + 2 <= e[j + 1]; ++l) {
      Cone c1{{t.e_l[l], t.e_l[l + 1]}, {}};
      Cone c2{{t.e_l[l + 1], t.e_l[l + 2]}, {}};
      Cone ray{{t.e_l[l + 1]}, {}};
      Cone inter = intersect_cones(c1, c2);
      bool ok = cones_intersection_dim(inter, ray).kind ==
                IntersectionKind::CompleteOverlap;
      rep.add("(i) E-cones at l=" + l.str(), ok);
    }
  }
  // (ii) interior E rays are convex combinations of the extremes
  for (std::size_t j = 1; j + 1 <= n - 1; ++j) {
    const Int span = e[j + 1] - e[j];
    for (Int l = e[j] + 1; l < e[j + 1]; ++l) {
      RatVec combo =
          convex_combo(t.e_l[e[j]], t.e_l[e[j + 1]],
                       Rat(e[j + 1] - l) / Rat(span), Rat(l - e[j]) / Rat(span));
      rep.add("(ii) E" + l.str() + " between E" + e[j].str() + ",E" +
                  e[j + 1].str(),
              equals_rat(t.e_l[l], combo));
    }
  }
  // (iii) consecutive h cones
  for (std::size_t j = 1; j <= n - 1; ++j) {
    if (e[j] < 2) continue;
    for (Int l = e[j]; l + 2 <= e[j + 1]; ++l) {
      Cone c1{{t.h_l[l], t.h_l[l + 1]}, {}};
      Cone c2{{t.h_l[l + 1], t.h_l[l + 2]}, {}};
      Cone ray{{t.h_l[l + 1]}, {}};
      Cone inter = intersect_cones(c1, c2);
      bool ok = cones_intersection_dim(inter, ray).kind ==
                IntersectionKind::CompleteOverlap;
      rep.add("(iii) h-cones at l=" + l.str(), ok);
    }
  }
  // (iv) interior h rays
  for (std::size_t j = 1; j <= n - 1; ++j) {
    if (e[j] < 2) continue;  // i_1 = 1 is handled by item (vii)
    const Int span = e[j + 1] - e[j];
    for (Int l = e[j] + 1; l < e[j + 1]; ++l) {
      RatVec combo =
          convex_combo(t.h_l[e[j]], t.h_l[e[j + 1]],
                       Rat(e[j + 1] - l) / Rat(span), Rat(l - e[j]) / Rat(span));
      rep.add("(iv) h" + l.str() + " between h" + e[j].str() + ",h" +
                  e[j + 1].str(),
              equals_rat(t.h_l[l], combo));
    }
  }
  // (v) [h_{i_n}] inside <[h_{i_{n-1}}], [D_{i_n}]>
  {
    Cone c{{t.h_l[e[n - 1]], unit_vector(n + 1, n)}, {}};
    auto cert = cone_contains(c, t.h_l[e[n]]);
    rep.add("(v) h_top in <h_{i_{n-1}}, D_{i_n}>", cert.has_value());
  }
  // (vi) E rays below i_1 collapse onto the E_{i_1} ray; low h rays lie in
  // the cone spanned by h_2 and h_{i_s}
  {
    bool ok = true;
    std::string why;
    for (Int l = 1; l <= e[1]; ++l) {
      IntVec expect(n + 1, 0);
      for (std::size_t j = 1; j <= n; ++j) expect[j] = l;
      if (!vectors_equal_str(t.e_l[l], expect, &why)) ok = false;
    }
    rep.add("(vi) [E_l] = l*sum(e_j) for l <= i_1", ok, why);
  }
  const std::size_t s = e[1] >= 2 ? 1 : 2;
  {
    const Int is = e[s];
    if (is > 2) {
      bool ok = true;
      for (Int l = 2; l <= is; ++l) {
        RatVec combo = convex_combo(t.h_l[2], t.h_l[is], Rat(is - l) / Rat(is - 2),
                                    Rat(l - 2) / Rat(is - 2));
        ok = ok && equals_rat(t.h_l[l], combo);
      }
      rep.add("(vi) h_l in <h_2, h_{i_s}> for 2 <= l <= i_s", ok);
    }
  }
  // (vii) the two D_infinity cases
  if (s == 1) {
    // [D_inf] = (i_1 - 1) e_0 + [h_{i_1}]: D_infinity is bivalent between
    // D_0 and h_{i_1}
    IntVec expect = add(scale(e[1] - 1, unit_vector(n + 1, 0)), t.h_l[e[1]]);
    std::string why;
    bool ok = vectors_equal_str(t.d_infinity, expect, &why);
    rep.add("(vii) s=1: [D_inf] on <D_0, h_{i_1}>", ok, why);
  } else {
    // i_1 = 1: [D_inf] equals the master node h_{i_1}, and the rays h_l for
    // 2 <= l <= i_2 live in <[D_inf], [h_{i_2}]>
    std::string why;
    bool ok = vectors_equal_str(t.d_infinity, h_node_vector(e, 1), &why);
    rep.add("(vii) s=2: [D_inf] = h_{i_1} node", ok, why);
    bool ok2 = true;
    for (Int l = 2; l <= e[2]; ++l) {
      Cone c{{t.d_infinity, t.h_l[e[2]]}, {}};
      ok2 = ok2 && cone_contains(c, t.h_l[l]).has_value();
    }
    rep.add("(vii) s=2: h_l in <[D_inf], h_{i_2}>", ok2);
  }
  // final clause: pairwise intersections of maximal cones over the master
  // graph are trivial except the F_{ending} overlap
  {
    RayGraph g = build_master_graph(e);
    std::vector<ProgressionSubset> subsets = enumerate_progression_subsets(e);
    IntVec ending(e.e.begin() + 1, e.e.end());
    bool has_ending = false;
    for (const ProgressionSubset& ps : subsets) {
      if (ps.members == ending) has_ending = true;
    }
    // cross-check the ending-subset criterion from the gcd of differences
    Int gdiff = 0;
    for (std::size_t j = 2; j <= n; ++j) gdiff = gcd_int(gdiff, e[j] - e[1]);
    rep.add("ending subset criterion gcd(i_j - i_1) != 1",
            has_ending == (gdiff != 1));
    if (has_ending) {
      IntVec fe = g.node_vector(NodeLabel::f(ending));
      std::string why;
      rep.add("i_1 * F_ending = E_{i_1}",
              vectors_equal_str(scale(e[1], fe),
                                g.node_vector(NodeLabel::e(e[1])), &why),
              why);
    }
    std::vector<EdgeKey> keys;
    for (const auto& [k, w] : g.edges()) keys.push_back(k);
    bool ok = true;
    std::string why;
    for (std::size_t a = 0; a < keys.size() && ok; ++a) {
      Cone ca{{g.node_vector(keys[a].first), g.node_vector(keys[a].second)}, {}};
      for (std::size_t b = a + 1; b < keys.size() && ok; ++b) {
        Cone cb{{g.node_vector(keys[b].first), g.node_vector(keys[b].second)},
                {}};
        IntersectionResult ir = cones_intersection_dim(ca, cb);
        bool exceptional = false;
        if (has_ending) {
          EdgeKey fe_edge =
              make_edge_key(NodeLabel::f(ending), NodeLabel::d(e[1]));
          EdgeKey e1_edge =
              make_edge_key(NodeLabel::e(e[1]), NodeLabel::d(e[1]));
          exceptional = (keys[a] == fe_edge && keys[b] == e1_edge) ||
                        (keys[a] == e1_edge && keys[b] == fe_edge);
        }
        if (exceptional) {
          if (ir.kind != IntersectionKind::CompleteOverlap) {
            ok = false;
            why = "expected complete overlap for the F_ending edge";
          }
        } else if (ir.kind == IntersectionKind::PartialOverlap ||
                   ir.kind == IntersectionKind::CompleteOverlap ||
                   ir.kind == IntersectionKind::InternalCrossing) {
          ok = false;
          why = "edges " + keys[a].first.str() + keys[a].second.str() + " and " +
                keys[b].first.str() + keys[b].second.str() + " intersect: " +
                to_string(ir.kind);
        }
      }
    }
    rep.add("pairwise master-cone intersections trivial", ok, why);
  }
  return rep;
}

TropicalFan master_fan(const ExponentSequence& e) {
  RayGraph g = build_master_graph(e);
  TropicalFan fan;
  fan.ambient_dim = g.ambient_dim;
  fan.rays = g.nodes();
  IntVec ending(e.e.begin() + 1, e.e.end());
  NodeLabel f_end = NodeLabel::f(ending);
  NodeLabel e1 = NodeLabel::e(e[1]);
  NodeLabel d1 = NodeLabel::d(e[1]);
  bool has_ending = g.has_node(f_end);
  for (const auto& [k, w] : g.edges()) {
    if (has_ending && k == make_edge_key(f_end, d1)) continue;  // merged below
    Rat weight = w;
    if (has_ending && k == make_edge_key(e1, d1)) {
      weight += g.edges().at(make_edge_key(f_end, d1));
    }
    fan.cones.push_back({{k.first, k.second}, weight});
  }
  return fan;
}

}  // namespace tropsec
