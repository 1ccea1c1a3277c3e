#include "tropsec/fans.hpp"

#include <algorithm>
#include <cassert>

namespace tropsec {

std::string NodeLabel::str() const {
  switch (kind) {
    case Kind::D:
      return "D" + value.str();
    case Kind::E:
      return "E" + value.str();
    case Kind::H:
      return "h" + value.str();
    case Kind::F: {
      std::string s = "F{";
      for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ",";
        s += subset[i].str();
      }
      return s + "}";
    }
    case Kind::P:
      return "P{" + name + "}";
    case Kind::V:
      return "V" + value.str();
    case Kind::Aux:
      return name;
  }
  return "?";
}

void RayGraph::add_node(const NodeLabel& l, IntVec v, bool keep_always) {
  if (ambient_dim == 0) ambient_dim = v.size();
  if (v.size() != ambient_dim) throw MathError("node dimension mismatch");
  auto it = nodes_.find(l);
  if (it != nodes_.end()) {
    if (it->second != v) throw MathError("node relabel conflict: " + l.str());
  } else {
    nodes_.emplace(l, std::move(v));
  }
  if (keep_always) keep_.insert(l);
}

void RayGraph::add_edge(const NodeLabel& a, const NodeLabel& b, const Rat& w) {
  if (a == b) throw MathError("loop edge at " + a.str());
  if (!has_node(a) || !has_node(b)) {
    throw MathError("edge endpoints missing: " + a.str() + "," + b.str());
  }
  if (w <= 0) throw MathError("nonpositive edge weight at " + a.str() + b.str());
  edges_[make_edge_key(a, b)] += w;  // parallel edges merge, weights sum
}

const IntVec& RayGraph::node_vector(const NodeLabel& l) const {
  auto it = nodes_.find(l);
  if (it == nodes_.end()) throw MathError("unknown node " + l.str());
  return it->second;
}

std::size_t RayGraph::degree(const NodeLabel& l) const {
  std::size_t d = 0;
  for (const auto& [k, w] : edges_) {
    if (k.first == l || k.second == l) ++d;
  }
  return d;
}

std::vector<std::pair<NodeLabel, Rat>> RayGraph::neighbors(
    const NodeLabel& l) const {
  std::vector<std::pair<NodeLabel, Rat>> out;
  for (const auto& [k, w] : edges_) {
    if (k.first == l) out.emplace_back(k.second, w);
    else if (k.second == l) out.emplace_back(k.first, w);
  }
  return out;
}

void RayGraph::remove_node(const NodeLabel& l) {
  for (auto it = edges_.begin(); it != edges_.end();) {
    if (it->first.first == l || it->first.second == l) it = edges_.erase(it);
    else ++it;
  }
  nodes_.erase(l);
  keep_.erase(l);
}

void RayGraph::remove_edge(const NodeLabel& a, const NodeLabel& b) {
  edges_.erase(make_edge_key(a, b));
}

void RayGraph::identify_nodes(const NodeLabel& from, const NodeLabel& into) {
  if (!has_node(from) || !has_node(into)) {
    throw MathError("identify_nodes: missing node");
  }
  std::vector<std::pair<NodeLabel, Rat>> nb = neighbors(from);
  for (const auto& [other, w] : nb) {
    if (other != into) edges_[make_edge_key(into, other)] += w;
  }
  remove_node(from);
}

void RayGraph::assert_integral_weights() const {
  for (const auto& [k, w] : edges_) {
    if (w <= 0 || boost::multiprecision::denominator(w) != 1) {
      throw MathError("half-integral weight on edge " + k.first.str() + "--" +
                      k.second.str());
    }
  }
}

std::size_t Cone::dim() const {
  std::vector<IntVec> gens = rays;
  gens.insert(gens.end(), lineality.begin(), lineality.end());
  if (gens.empty()) return 0;
  return rank(IntMatrix::from_rows(gens));
}

Cone TropicalFan::cone_at(std::size_t idx) const {
  Cone c;
  c.lineality = lineality;
  for (const NodeLabel& l : cones[idx].first) {
    auto it = rays.find(l);
    if (it == rays.end()) throw MathError("fan ray missing: " + l.str());
    c.rays.push_back(it->second);
  }
  return c;
}

std::optional<ConeCertificate> cone_contains(const Cone& cone,
                                             const RatVec& point) {
  std::vector<IntVec> gens = cone.rays;
  gens.insert(gens.end(), cone.lineality.begin(), cone.lineality.end());
  const std::size_t k = cone.rays.size();
  if (gens.empty()) {
    bool zero = true;
    for (const Rat& x : point) zero = zero && x == 0;
    if (!zero) return std::nullopt;
    return ConeCertificate{{}, {}};
  }
  IntMatrix m = IntMatrix::from_cols(gens);
  if (rank(m) != gens.size()) {
    throw MathError("cone_contains requires independent generators");
  }
  std::optional<RatVec> x = solve(m, point);
  if (!x) return std::nullopt;
  ConeCertificate cert;
  for (std::size_t i = 0; i < k; ++i) {
    if ((*x)[i] < 0) return std::nullopt;
    cert.ray_coeffs.push_back((*x)[i]);
  }
  for (std::size_t i = k; i < gens.size(); ++i) cert.lin_coeffs.push_back((*x)[i]);
  return cert;
}

std::optional<ConeCertificate> cone_contains(const Cone& cone,
                                             const IntVec& point) {
  return cone_contains(cone, to_rat(point));
}

namespace {

// Phase-1 simplex over exact rationals: feasibility of A x = b, x >= 0.
bool lp_feasible(const std::vector<RatVec>& a_rows, const RatVec& b) {
  const std::size_t m = a_rows.size();
  const std::size_t n = m == 0 ? 0 : a_rows[0].size();
  if (m == 0) return true;
  // tableau with artificial basis: columns 0..n-1 structural, n..n+m-1
  // artificial, last column rhs
  std::vector<RatVec> t(m, RatVec(n + m + 1, Rat(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rat s = b[i] >= 0 ? Rat(1) : Rat(-1);
    for (std::size_t j = 0; j < n; ++j) t[i][j] = s * a_rows[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = s * b[i];
    basis[i] = n + i;
  }
  // objective: minimize sum of artificials -> row of reduced costs
  RatVec cost(n + m + 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n + m; ++j) cost[j] -= t[i][j];
  }
  while (true) {
    // Bland's rule: first column with negative reduced cost
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n + m) break;
    // ratio test, Bland tie-break on basis index
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > 0) {
        Rat ratio = t[i][n + m] / t[i][enter];
        if (leave == m || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) break;  // unbounded phase-1 cannot happen, guard anyway
    // pivot
    Rat piv = t[leave][enter];
    for (std::size_t j = 0; j <= n + m; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i != leave && t[i][enter] != 0) {
        Rat f = t[i][enter];
        for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
      }
    }
    if (cost[enter] != 0) {
      Rat f = cost[enter];
      for (std::size_t j = 0; j <= n + m; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  // feasible iff optimum 0 (cost row rhs is -objective)
  return cost[n + m] == 0;
}

}  // namespace

bool cone_member(const Cone& cone, const IntVec& point) {
  // point = R c + L d, c >= 0, d free  <=>  point = R c + L d+ - L d-
  const std::size_t dim = point.size();
  std::vector<RatVec> rows(dim);
  const std::size_t nvars = cone.rays.size() + 2 * cone.lineality.size();
  for (std::size_t i = 0; i < dim; ++i) {
    rows[i].assign(nvars, Rat(0));
    for (std::size_t j = 0; j < cone.rays.size(); ++j) {
      rows[i][j] = Rat(cone.rays[j][i]);
    }
    for (std::size_t j = 0; j < cone.lineality.size(); ++j) {
      rows[i][cone.rays.size() + 2 * j] = Rat(cone.lineality[j][i]);
      rows[i][cone.rays.size() + 2 * j + 1] = Rat(-cone.lineality[j][i]);
    }
  }
  return lp_feasible(rows, to_rat(point));
}

namespace {

struct ParamCone {
  std::vector<IntVec> lines;
  std::vector<IntVec> rays;
};

void impose_halfspace(ParamCone& c, const IntVec& a) {
  // find a line with a.l != 0
  std::size_t l0 = c.lines.size();
  for (std::size_t i = 0; i < c.lines.size(); ++i) {
    if (dot(a, c.lines[i]) != 0) {
      l0 = i;
      break;
    }
  }
  if (l0 < c.lines.size()) {
    IntVec v0 = c.lines[l0];
    if (dot(a, v0) < 0) v0 = scale(-1, v0);
    Int av0 = dot(a, v0);
    std::vector<IntVec> newlines;
    for (std::size_t i = 0; i < c.lines.size(); ++i) {
      if (i == l0) continue;
      Int al = dot(a, c.lines[i]);
      IntVec l = sub(scale(av0, c.lines[i]), scale(al, v0));
      if (!is_zero(l)) newlines.push_back(make_primitive(l));
    }
    for (IntVec& r : c.rays) {
      Int ar = dot(a, r);
      IntVec nr = sub(scale(av0, r), scale(ar, v0));
      if (!is_zero(nr)) r = make_primitive(nr);
      else r = nr;  // collapses onto the line; drop below
    }
    c.rays.erase(std::remove_if(c.rays.begin(), c.rays.end(),
                                [](const IntVec& r) { return is_zero(r); }),
                 c.rays.end());
    c.rays.push_back(make_primitive(v0));
    c.lines = std::move(newlines);
    return;
  }
  std::vector<IntVec> pos, zero, neg;
  for (const IntVec& r : c.rays) {
    Int ar = dot(a, r);
    if (ar > 0) pos.push_back(r);
    else if (ar == 0) zero.push_back(r);
    else neg.push_back(r);
  }
  std::vector<IntVec> out = pos;
  out.insert(out.end(), zero.begin(), zero.end());
  for (const IntVec& rp : pos) {
    for (const IntVec& rn : neg) {
      IntVec combo = sub(scale(dot(a, rp), rn), scale(dot(a, rn), rp));
      if (!is_zero(combo)) out.push_back(make_primitive(combo));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  c.rays = std::move(out);
}

}  // namespace

Cone intersect_cones(const Cone& a, const Cone& b) {
  const std::size_t dim = a.ambient();
  const std::size_t ka = a.rays.size(), la = a.lineality.size();
  const std::size_t kb = b.rays.size(), lb = b.lineality.size();
  const std::size_t nv = ka + la + kb + lb;
  // constraint: A z_A - B z_B = 0
  IntMatrix cm(dim, nv);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t col = 0;
    for (std::size_t j = 0; j < ka; ++j) cm(i, col++) = a.rays[j][i];
    for (std::size_t j = 0; j < la; ++j) cm(i, col++) = a.lineality[j][i];
    for (std::size_t j = 0; j < kb; ++j) cm(i, col++) = -b.rays[j][i];
    for (std::size_t j = 0; j < lb; ++j) cm(i, col++) = -b.lineality[j][i];
  }
  ParamCone pc;
  pc.lines = kernel_basis(cm);
  for (std::size_t j = 0; j < ka; ++j) impose_halfspace(pc, unit_vector(nv, j));
  for (std::size_t j = 0; j < kb; ++j) {
    impose_halfspace(pc, unit_vector(nv, ka + la + j));
  }
  // map parameter generators through the A-side evaluation
  auto eval = [&](const IntVec& z) {
    IntVec x(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < ka; ++j) s += a.rays[j][i] * z[j];
      for (std::size_t j = 0; j < la; ++j) s += a.lineality[j][i] * z[ka + j];
      x[i] = s;
    }
    return x;
  };
  Cone out;
  std::set<IntVec> seen_rays, seen_lines;
  for (const IntVec& l : pc.lines) {
    IntVec x = eval(l);
    if (is_zero(x)) continue;
    IntVec p = make_primitive(x);
    IntVec pn = scale(-1, p);
    if (seen_lines.count(p) || seen_lines.count(pn)) continue;
    seen_lines.insert(p);
    out.lineality.push_back(p);
  }
  for (const IntVec& r : pc.rays) {
    IntVec x = eval(r);
    if (is_zero(x)) continue;
    IntVec p = make_primitive(x);
    if (seen_rays.count(p)) continue;
    seen_rays.insert(p);
    out.rays.push_back(p);
  }
  return out;
}

std::string to_string(IntersectionKind k) {
  switch (k) {
    case IntersectionKind::DisjointAtZero: return "disjoint-at-0";
    case IntersectionKind::NodalCrossing: return "nodal-crossing";
    case IntersectionKind::InternalCrossing: return "internal-crossing";
    case IntersectionKind::PartialOverlap: return "partial-overlap";
    case IntersectionKind::CompleteOverlap: return "complete-overlap";
  }
  return "?";
}

namespace {

bool cone_subset(const Cone& inner, const Cone& outer) {
  for (const IntVec& r : inner.rays) {
    if (!cone_member(outer, r)) return false;
  }
  for (const IntVec& l : inner.lineality) {
    if (!cone_member(outer, l)) return false;
    if (!cone_member(outer, scale(-1, l))) return false;
  }
  return true;
}

bool cone_set_equal(const Cone& a, const Cone& b) {
  return cone_subset(a, b) && cone_subset(b, a);
}

// Is `c` a face of the simplicial cone `of`? Faces are spanned by ray
// subsets together with the full lineality.
bool is_face_of(const Cone& c, const Cone& of) {
  const std::size_t k = of.rays.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    Cone face;
    face.lineality = of.lineality;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask & (std::size_t(1) << j)) face.rays.push_back(of.rays[j]);
    }
    if (cone_set_equal(c, face)) return true;
  }
  return false;
}

}  // namespace

IntersectionResult cones_intersection_dim(const Cone& a, const Cone& b) {
  IntersectionResult res;
  res.intersection = intersect_cones(a, b);
  res.dim = res.intersection.dim();
  const std::size_t da = a.dim(), db = b.dim();
  const std::size_t dmax = std::max(da, db);
  if (res.dim == dmax && cone_set_equal(a, b)) {
    res.kind = IntersectionKind::CompleteOverlap;
  } else if (res.dim == dmax) {
    res.kind = IntersectionKind::PartialOverlap;
  } else if (res.dim + 1 == dmax) {
    bool face = is_face_of(res.intersection, a) && is_face_of(res.intersection, b);
    res.kind = face ? IntersectionKind::NodalCrossing
                    : IntersectionKind::InternalCrossing;
  } else {
    res.kind = IntersectionKind::DisjointAtZero;
  }
  return res;
}

Quotient::Quotient(const std::vector<IntVec>& lineality, std::size_t ambient)
    : ambient_(ambient) {
  if (lineality.empty()) {
    proj_ = IntMatrix::identity(ambient);
    lift_ = IntMatrix::identity(ambient);
    return;
  }
  IntMatrix lin = IntMatrix::from_rows(lineality);
  IntMatrix sat = saturation_basis(lin);
  if (sat.rows() != lineality.size()) {
    throw MathError("quotient lineality must be independent");
  }
  IntMatrix basis = complete_to_unimodular(sat);  // rows: lin basis, then rest
  // proj = last (ambient - k) rows of basis^{-1} applied on the left:
  // coordinates of x in the row basis are solve(basis^T, x).
  // Precompute basis^{-T} once.
  IntMatrix bt = basis.transposed();
  const std::size_t k = sat.rows();
  const std::size_t q = ambient - k;
  proj_ = IntMatrix(q, ambient);
  for (std::size_t j = 0; j < ambient; ++j) {
    std::optional<RatVec> col = solve(bt, unit_vector(ambient, j));
    if (!col) throw MathError("quotient basis inversion failed");
    for (std::size_t i = 0; i < q; ++i) {
      const Rat& entry = (*col)[k + i];
      if (boost::multiprecision::denominator(entry) != 1) {
        throw MathError("quotient projection not integral");
      }
      proj_(i, j) = boost::multiprecision::numerator(entry);
    }
  }
  // lift of quotient coords: sum of completion basis rows
  lift_ = IntMatrix(ambient, q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < ambient; ++j) lift_(j, i) = basis(k + i, j);
  }
}

IntVec Quotient::project(const IntVec& v) const {
  IntVec out(proj_.rows());
  for (std::size_t i = 0; i < proj_.rows(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < ambient_; ++j) s += proj_(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

RatVec Quotient::project(const RatVec& v) const {
  RatVec out(proj_.rows(), Rat(0));
  for (std::size_t i = 0; i < proj_.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < ambient_; ++j) s += Rat(proj_(i, j)) * v[j];
    out[i] = s;
  }
  return out;
}

IntVec Quotient::primitive_ray(const IntVec& v) const {
  IntVec p = project(v);
  if (is_zero(p)) throw MathError("vector lies in the lineality space");
  return make_primitive(p);
}

IntVec Quotient::lift(const IntVec& q) const {
  IntVec out(ambient_, 0);
  for (std::size_t j = 0; j < ambient_; ++j) {
    Int s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += lift_(j, i) * q[i];
    out[j] = s;
  }
  return out;
}

BivalentReport eliminate_bivalent_nodes(RayGraph& g) {
  BivalentReport report;
  bool changed = true;
  std::set<NodeLabel> reported;
  while (changed) {
    changed = false;
    std::vector<NodeLabel> labels;
    for (const auto& [l, v] : g.nodes()) labels.push_back(l);
    for (const NodeLabel& l : labels) {
      if (g.kept(l)) continue;
      auto nb = g.neighbors(l);
      if (nb.size() != 2) continue;
      const auto& [na, wa] = nb[0];
      const auto& [nbl, wb] = nb[1];
      if (wa != wb) {
        if (!reported.count(l)) {
          report.retained.emplace_back(
              l, "degree-2 node with unequal incident weights");
          reported.insert(l);
        }
        continue;
      }
      // removal keeps cones unchanged iff l lies in the relative interior of
      // cone(neighbors) modulo lineality
      Cone c;
      c.rays = {g.node_vector(na), g.node_vector(nbl)};
      c.lineality = g.lineality;
      std::vector<IntVec> gens = c.rays;
      gens.insert(gens.end(), c.lineality.begin(), c.lineality.end());
      if (rank(IntMatrix::from_rows(gens)) != gens.size()) {
        if (!reported.count(l)) {
          report.retained.emplace_back(l, "degenerate neighbour cone");
          reported.insert(l);
        }
        continue;
      }
      std::optional<ConeCertificate> cert = cone_contains(c, g.node_vector(l));
      bool interior = cert && cert->ray_coeffs[0] > 0 && cert->ray_coeffs[1] > 0;
      if (!interior) {
        if (!reported.count(l)) {
          report.retained.emplace_back(l, "not interior to neighbour cone");
          reported.insert(l);
        }
        continue;
      }
      NodeLabel a = na, b = nbl;
      Rat w = wa;
      g.remove_node(l);
      g.add_edge(a, b, w);
      report.removed.push_back(l);
      changed = true;
    }
  }
  return report;
}

}  // namespace tropsec
