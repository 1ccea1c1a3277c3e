#include "tropsec/polytope.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace tropsec {

namespace {

IntVec codim1_normal(const std::vector<IntVec>& gens, std::size_t ambient) {
  IntMatrix rows = IntMatrix::from_rows(gens);
  if (rank(rows) + 1 != ambient) {
    throw MathError("cone is not codimension one");
  }
  std::optional<IntVec> nu = kernel_vector(rows);
  if (!nu) throw MathError("normal computation failed");
  return *nu;
}

}  // namespace

WeightedConeFan fan_from_graph(const RayGraph& g) {
  WeightedConeFan fan;
  fan.ambient = g.ambient_dim;
  fan.lineality = g.lineality;
  for (const auto& [k, w] : g.edges()) {
    WeightedConeFan::MaxCone c;
    c.rays = {g.node_vector(k.first), g.node_vector(k.second)};
    c.weight = w;
    std::vector<IntVec> gens = c.rays;
    gens.insert(gens.end(), fan.lineality.begin(), fan.lineality.end());
    c.normal = codim1_normal(gens, fan.ambient);
    fan.cones.push_back(std::move(c));
  }
  return fan;
}

WeightedConeFan fan_from_secant(const SecantFan& fan) {
  return fan_from_graph(fan.to_graph());
}

ShootResult ray_shoot(const WeightedConeFan& fan, const IntVec& w) {
  const std::size_t dim = fan.ambient;
  ShootResult res;
  res.objective = w;
  res.rays.resize(dim);
  // reject objectives on any span hyperplane
  std::vector<Int> nw(fan.cones.size());
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    nw[c] = dot(fan.cones[c].normal, w);
    if (nw[c] == 0) {
      throw DegenerateRay("objective lies on a cone hyperplane");
    }
  }
  res.vertex.assign(dim, Int(0));
  for (std::size_t i = 0; i < dim; ++i) {
    ShootRay& ray = res.rays[i];
    for (std::size_t c = 0; c < fan.cones.size(); ++c) {
      const auto& cone = fan.cones[c];
      const Int& ni = cone.normal[i];
      if (ni == 0) continue;  // ray parallel to the hyperplane; nw != 0
      Rat t = -Rat(nw[c]) / Rat(ni);
      if (t <= 0) continue;
      // membership of w + t e_i in the cone
      RatVec p = to_rat(w);
      p[i] += t;
      Cone full{cone.rays, fan.lineality};
      std::optional<ConeCertificate> cert = cone_contains(full, p);
      if (!cert) continue;
      for (const Rat& coeff : cert->ray_coeffs) {
        if (coeff == 0) {
          throw DegenerateRay("ray hits a cone boundary (direction " +
                              std::to_string(i) + ")");
        }
      }
      ShootCrossing cr;
      cr.t = t;
      cr.cone = c;
      cr.multiplicity = cone.weight;
      cr.normal = ni > 0 ? cone.normal : scale(-1, cone.normal);
      ray.crossings.push_back(std::move(cr));
    }
    std::sort(ray.crossings.begin(), ray.crossings.end(),
              [](const ShootCrossing& x, const ShootCrossing& y) {
                return x.t < y.t;
              });
    // crossings at the same parameter must share the hyperplane (overlaps)
    for (std::size_t a = 0; a + 1 < ray.crossings.size(); ++a) {
      if (ray.crossings[a].t == ray.crossings[a + 1].t &&
          ray.crossings[a].normal != ray.crossings[a + 1].normal) {
        throw DegenerateRay("ray meets two hyperplanes at one point");
      }
    }
    Rat coord = 0;
    for (const ShootCrossing& cr : ray.crossings) {
      coord += cr.multiplicity * Rat(abs_int(cr.normal[i]));
    }
    if (boost::multiprecision::denominator(coord) != 1 || coord < 0) {
      throw MathError("non-integral shoot coordinate");
    }
    ray.coordinate = boost::multiprecision::numerator(coord);
    res.vertex[i] = ray.coordinate;
  }
  return res;
}

namespace {

IntVec integerize(const RatVec& v) {
  Int l = 1;
  for (const Rat& x : v) l = lcm_int(l, boost::multiprecision::denominator(x));
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = boost::multiprecision::numerator(v[i]) *
             (l / boost::multiprecision::denominator(v[i]));
  }
  return out;
}

IntVec random_objective(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<long long> dist(-1000000, 1000000);
  IntVec w(dim);
  for (std::size_t i = 0; i < dim; ++i) w[i] = Int(dist(rng));
  return w;
}

ShootResult shoot_with_retries(const WeightedConeFan& fan, const IntVec& base,
                               std::mt19937_64& rng, int retry_limit) {
  // jitter with shrinking relative magnitude until the shoot is generic
  Int scalebase = 1 << 20;
  for (int attempt = 0; attempt <= retry_limit; ++attempt) {
    try {
      if (attempt == 0) return ray_shoot(fan, base);
      std::uniform_int_distribution<long long> dist(-63, 63);
      IntVec w = scale(scalebase, base);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += Int(dist(rng));
      return ray_shoot(fan, w);
    } catch (const DegenerateRay&) {
      scalebase <<= 1;
    }
  }
  throw ResourceError("degenerate ray persisted beyond the retry limit");
}

}  // namespace

EnumerationResult enumerate_vertices(const WeightedConeFan& fan,
                                     const EnumerateOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  // seed objective
  ShootResult seed_res = [&]() {
    for (int attempt = 0; attempt < opt.retry_limit; ++attempt) {
      try {
        return ray_shoot(fan, random_objective(rng, fan.ambient));
      } catch (const DegenerateRay&) {
        continue;
      }
    }
    throw ResourceError("no generic seed objective found");
  }();

  std::set<IntVec> seen;
  std::deque<ShootResult> queue;
  seen.insert(seed_res.vertex);
  queue.push_back(std::move(seed_res));
  std::size_t chambers = 1;

  while (!queue.empty()) {
    ShootResult cur = std::move(queue.front());
    queue.pop_front();
    if (seen.size() > opt.max_chambers) {
      throw ResourceError("chamber frontier exceeded the configured bound");
    }
    for (std::size_t i = 0; i < fan.ambient; ++i) {
      const ShootRay& ray = cur.rays[i];
      IntVec v_cur = cur.vertex;
      std::size_t a = 0;
      while (a < ray.crossings.size()) {
        // group crossings at the same parameter (overlapping cones)
        std::size_t b = a;
        Rat total = 0;
        while (b < ray.crossings.size() &&
               ray.crossings[b].t == ray.crossings[a].t) {
          total += ray.crossings[b].multiplicity;
          ++b;
        }
        const IntVec& nu = ray.crossings[a].normal;  // oriented nu[i] > 0
        Rat step = total;
        IntVec v_next = v_cur;
        for (std::size_t k = 0; k < v_next.size(); ++k) {
          Rat delta = step * Rat(nu[k]);
          if (boost::multiprecision::denominator(delta) != 1) {
            throw MathError("non-integral wall step");
          }
          v_next[k] -= boost::multiprecision::numerator(delta);
        }
        if (!seen.count(v_next)) {
          // objective strictly past this crossing, before the next
          Rat tmid = b < ray.crossings.size()
                         ? (ray.crossings[a].t + ray.crossings[b].t) / 2
                         : ray.crossings[a].t + 1;
          RatVec wq = to_rat(cur.objective);
          wq[i] += tmid;
          ShootResult next =
              shoot_with_retries(fan, integerize(wq), rng, opt.retry_limit);
          if (next.vertex != v_next) {
            throw MathError(
                "walk prediction mismatch: wall crossing predicted " +
                vec_to_string(v_next) + " but shooting found " +
                vec_to_string(next.vertex));
          }
          seen.insert(v_next);
          ++chambers;
          queue.push_back(std::move(next));
        }
        v_cur = v_next;
        a = b;
      }
    }
  }
  EnumerationResult out;
  out.vertices.assign(seen.begin(), seen.end());
  out.chamber_count = chambers;
  return out;
}

std::vector<IntVec> randomized_vertices(const WeightedConeFan& fan,
                                        std::uint64_t seed,
                                        std::size_t stability) {
  std::mt19937_64 rng(seed);
  std::set<IntVec> seen;
  std::size_t stable = 0;
  int degenerate_budget = 1000;
  while (stable < stability) {
    try {
      ShootResult res = ray_shoot(fan, random_objective(rng, fan.ambient));
      if (seen.insert(res.vertex).second) stable = 0;
      else ++stable;
    } catch (const DegenerateRay&) {
      if (--degenerate_budget < 0) {
        throw ResourceError("randomized shooting kept drawing degenerate rays");
      }
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// convex hull
// ---------------------------------------------------------------------------

namespace {

struct HullFacet {
  IntVec normal;  // inner: normal . x >= offset for hull points
  Int offset;
  std::vector<std::size_t> defining;  // simplicial vertex indices, sorted
};

// hyperplane through r affinely independent points
std::pair<IntVec, Int> hyperplane_through(const std::vector<IntVec>& pts) {
  std::vector<IntVec> dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    dirs.push_back(sub(pts[i], pts[0]));
  }
  IntMatrix m = IntMatrix::from_rows(dirs);
  std::optional<IntVec> nu = kernel_vector(m);
  if (!nu) throw MathError("degenerate facet hyperplane");
  return {*nu, dot(*nu, pts[0])};
}

Polytope hull_in_coords(const std::vector<IntVec>& zs,
                        std::vector<std::size_t> order);

}  // namespace

Polytope convex_hull(std::vector<IntVec> points,
                     const std::vector<IntVec>& lineality) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t ambient = points[0].size();
  Quotient q(lineality, ambient);

  std::vector<IntVec> zs;
  zs.reserve(points.size());
  for (const IntVec& p : points) zs.push_back(q.project(p));

  // affine dimension in the quotient
  std::vector<IntVec> dirs;
  for (std::size_t i = 1; i < zs.size(); ++i) dirs.push_back(sub(zs[i], zs[0]));
  std::size_t adim = dirs.empty() ? 0 : rank(IntMatrix::from_rows(dirs));
  if (adim == 0) {
    throw std::invalid_argument("affine dimension must be at least 1");
  }
  bool degenerate = adim < q.quotient_dim();

  std::vector<IntVec> coords = zs;
  IntMatrix flat_basis;  // rows: basis of the direction lattice when degenerate
  if (degenerate) {
    flat_basis = saturation_basis(IntMatrix::from_rows(dirs));
    coords.clear();
    for (const IntVec& z : zs) {
      std::optional<RatVec> c = coordinates_in_row_basis(flat_basis, sub(z, zs[0]));
      if (!c) throw MathError("point escaped its affine hull");
      IntVec ci(adim);
      for (std::size_t j = 0; j < adim; ++j) {
        if (boost::multiprecision::denominator((*c)[j]) != 1) {
          throw MathError("non-integral affine coordinates");
        }
        ci[j] = boost::multiprecision::numerator((*c)[j]);
      }
      coords.push_back(ci);
    }
  }

  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return coords[a] < coords[b];
  });

  Polytope p = hull_in_coords(coords, order);
  p.lineality = lineality;
  p.degenerate_dim = degenerate;

  // translate vertex indices back to ambient points and lift facet normals
  std::vector<IntVec> verts;
  std::vector<std::size_t> vertex_of_point(points.size(),
                                           std::size_t(points.size()));
  // p.vertices currently holds coords; rebuild from index sets below
  std::vector<std::size_t> vertex_points;  // point index per hull vertex
  {
    // 0-dimensional faces are singleton point-index sets in hull numbering;
    // hull_in_coords stores faces in point indices already
    std::set<std::size_t> vset;
    if (!p.faces.empty()) {
      for (const auto& f : p.faces[0]) vset.insert(f[0]);
    }
    vertex_points.assign(vset.begin(), vset.end());
  }
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t k = 0; k < vertex_points.size(); ++k) {
    renumber[vertex_points[k]] = k;
    verts.push_back(points[vertex_points[k]]);
  }
  p.vertices = verts;
  auto renumber_sets = [&](std::vector<std::vector<std::size_t>>& sets) {
    for (auto& s : sets) {
      std::vector<std::size_t> ns;
      for (std::size_t idx : s) {
        auto it = renumber.find(idx);
        if (it != renumber.end()) ns.push_back(it->second);
      }
      std::sort(ns.begin(), ns.end());
      s = std::move(ns);
    }
  };
  for (auto& level : p.faces) renumber_sets(level);
  for (auto& facet : p.facets) {
    std::vector<std::vector<std::size_t>> tmp = {facet.vertex_set};
    renumber_sets(tmp);
    facet.vertex_set = tmp[0];
  }

  // lift facet data to ambient coordinates: the facet functional acts on the
  // hull coordinates; compose with the coordinate maps
  for (auto& facet : p.facets) {
    RatVec nu_ambient(ambient, Rat(0));
    // functional a on coords -> functional on z (quotient coords)
    RatVec a_on_z(q.quotient_dim(), Rat(0));
    Rat shift = 0;
    if (!degenerate) {
      for (std::size_t j = 0; j < q.quotient_dim(); ++j) {
        a_on_z[j] = Rat(facet.normal[j]);
      }
    } else {
      // a . coords(x) = a . M (z - z0) where rows of flat_basis give the
      // chart: coords solve flat_basis^T c = z - z0
      // build a_on_z via solving for each unit direction is avoided by the
      // transpose route: a_on_z = flat_basis^+ ... handled exactly below
      IntMatrix bt = flat_basis.transposed();
      // c(z) satisfies bt c = z - z0; the functional a.c is linear in z with
      // gradient g solving flat_basis g' ... use: g = bt^{+T} a computed by
      // solving (flat_basis flat_basis^T) y = a, g = flat_basis^T y
      IntMatrix gram(flat_basis.rows(), flat_basis.rows());
      for (std::size_t r = 0; r < flat_basis.rows(); ++r) {
        for (std::size_t c = 0; c < flat_basis.rows(); ++c) {
          gram(r, c) = dot(flat_basis.row(r), flat_basis.row(c));
        }
      }
      std::optional<RatVec> y = solve(gram, facet.normal);
      if (!y) throw MathError("facet lift failed");
      for (std::size_t j = 0; j < q.quotient_dim(); ++j) {
        Rat s = 0;
        for (std::size_t r = 0; r < flat_basis.rows(); ++r) {
          s += (*y)[r] * Rat(flat_basis(r, j));
        }
        a_on_z[j] = s;
      }
      for (std::size_t j = 0; j < q.quotient_dim(); ++j) {
        shift += a_on_z[j] * Rat(zs[0][j]);
      }
    }
    // functional on ambient x: a_on_z . proj(x)
    for (std::size_t col = 0; col < ambient; ++col) {
      Rat s = 0;
      IntVec ecol = unit_vector(ambient, col);
      IntVec pe = q.project(ecol);
      for (std::size_t j = 0; j < q.quotient_dim(); ++j) {
        s += a_on_z[j] * Rat(pe[j]);
      }
      nu_ambient[col] = s;
    }
    Rat off = Rat(facet.offset) + shift;
    // clear denominators and make primitive together with the offset
    Int l = 1;
    for (const Rat& x : nu_ambient) {
      l = lcm_int(l, boost::multiprecision::denominator(x));
    }
    l = lcm_int(l, boost::multiprecision::denominator(off));
    IntVec nu(ambient);
    for (std::size_t j = 0; j < ambient; ++j) {
      nu[j] = boost::multiprecision::numerator(nu_ambient[j]) *
              (l / boost::multiprecision::denominator(nu_ambient[j]));
    }
    Int offi = boost::multiprecision::numerator(off) *
               (l / boost::multiprecision::denominator(off));
    Int g = content(nu);
    if (g > 1 && offi % g == 0) {
      nu = make_primitive(nu);
      offi /= g;
    }
    facet.normal = nu;
    facet.offset = offi;
  }
  // final guard: all vertices satisfy all facet inequalities
  for (const auto& facet : p.facets) {
    for (const IntVec& v : p.vertices) {
      if (dot(facet.normal, v) < facet.offset) {
        throw MathError("hull facet violated by a vertex");
      }
    }
  }
  return p;
}

namespace {

Polytope hull_in_coords(const std::vector<IntVec>& zs,
                        std::vector<std::size_t> order) {
  Polytope p;
  const std::size_t dim = zs[0].size();
  const std::size_t npts = zs.size();
  p.dim = dim;

  if (dim == 1) {
    std::size_t lo = order.front(), hi = order.back();
    p.facets.push_back({IntVec{1}, zs[lo][0], {lo}});
    p.facets.push_back({IntVec{-1}, -zs[hi][0], {hi}});
    p.faces.resize(1);
    p.faces[0] = {{lo}, {hi}};
    p.f_vector = {2};
    return p;
  }

  // initial simplex: greedily extend an affinely independent set
  std::vector<std::size_t> simplex = {order[0]};
  for (std::size_t oi = 1; oi < npts && simplex.size() < dim + 1; ++oi) {
    std::vector<IntVec> dirs;
    for (std::size_t k = 1; k < simplex.size(); ++k) {
      dirs.push_back(sub(zs[simplex[k]], zs[simplex[0]]));
    }
    dirs.push_back(sub(zs[order[oi]], zs[simplex[0]]));
    if (rank(IntMatrix::from_rows(dirs)) == dirs.size()) {
      simplex.push_back(order[oi]);
    }
  }
  if (simplex.size() != dim + 1) throw MathError("hull initialization failed");

  // reference interior point: (dim+1) * centroid of the simplex
  IntVec refsum(dim, 0);
  for (std::size_t s : simplex) refsum = add(refsum, zs[s]);
  const Int refscale = Int(dim + 1);

  std::vector<HullFacet> facets;
  auto orient = [&](HullFacet& f) {
    // inner orientation against the reference point
    Int lhs = dot(f.normal, refsum);
    Int rhs = f.offset * refscale;
    if (lhs == rhs) throw MathError("hull reference on a facet hyperplane");
    if (lhs < rhs) {
      f.normal = scale(-1, f.normal);
      f.offset = -f.offset;
    }
  };
  for (std::size_t drop = 0; drop <= dim; ++drop) {
    HullFacet f;
    std::vector<IntVec> pts;
    for (std::size_t k = 0; k <= dim; ++k) {
      if (k == drop) continue;
      f.defining.push_back(simplex[k]);
      pts.push_back(zs[simplex[k]]);
    }
    std::sort(f.defining.begin(), f.defining.end());
    auto [nu, off] = hyperplane_through(pts);
    f.normal = nu;
    f.offset = off;
    orient(f);
    facets.push_back(std::move(f));
  }

  std::set<std::size_t> in_simplex(simplex.begin(), simplex.end());
  for (std::size_t oi = 0; oi < npts; ++oi) {
    std::size_t pi = order[oi];
    if (in_simplex.count(pi)) continue;
    const IntVec& x = zs[pi];
    std::vector<std::size_t> visible;
    for (std::size_t fidx = 0; fidx < facets.size(); ++fidx) {
      if (dot(facets[fidx].normal, x) < facets[fidx].offset) {
        visible.push_back(fidx);
      }
    }
    if (visible.empty()) continue;  // interior or boundary duplicate
    // horizon ridges: (dim-1)-subsets of visible facets not shared by two
    // visible facets
    std::set<std::size_t> vis(visible.begin(), visible.end());
    std::map<std::vector<std::size_t>, int> ridge_count;
    for (std::size_t fidx : visible) {
      const auto& def = facets[fidx].defining;
      for (std::size_t drop = 0; drop < def.size(); ++drop) {
        std::vector<std::size_t> ridge;
        for (std::size_t k = 0; k < def.size(); ++k) {
          if (k != drop) ridge.push_back(def[k]);
        }
        ridge_count[ridge] += 1;
      }
    }
    std::vector<HullFacet> next;
    for (std::size_t fidx = 0; fidx < facets.size(); ++fidx) {
      if (!vis.count(fidx)) next.push_back(facets[fidx]);
    }
    for (const auto& [ridge, cnt] : ridge_count) {
      if (cnt != 1) continue;  // interior ridge of the visible patch
      HullFacet f;
      f.defining = ridge;
      f.defining.push_back(pi);
      std::sort(f.defining.begin(), f.defining.end());
      std::vector<IntVec> pts;
      for (std::size_t idx : f.defining) pts.push_back(zs[idx]);
      auto [nu, off] = hyperplane_through(pts);
      f.normal = nu;
      f.offset = off;
      orient(f);
      next.push_back(std::move(f));
    }
    facets = std::move(next);
  }

  // merge coplanar simplicial facets and collect exact vertex sets
  std::map<std::pair<IntVec, Int>, std::vector<std::size_t>> merged;
  for (const HullFacet& f : facets) {
    IntVec nu = make_primitive(f.normal);
    Int g = content(f.normal);
    Int off = f.offset;
    if (g > 1) {
      if (off % g != 0) {
        // offset does not divide: keep unscaled (cannot happen for lattice
        // facets through lattice points, guard anyway)
        nu = f.normal;
      } else {
        off /= g;
      }
    }
    auto key = std::make_pair(nu, off);
    if (!merged.count(key)) {
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < npts; ++i) {
        if (dot(nu, zs[i]) == off) on.push_back(i);
      }
      merged[key] = on;
    }
  }
  for (const auto& [key, on] : merged) {
    for (std::size_t i = 0; i < npts; ++i) {
      if (dot(key.first, zs[i]) < key.second) {
        throw MathError("hull facet inequality violated");
      }
    }
    p.facets.push_back({key.first, key.second, on});
  }

  // face lattice: closure of facet vertex sets under intersection
  std::set<std::vector<std::size_t>> all_faces;
  std::deque<std::vector<std::size_t>> frontier;
  for (const auto& f : p.facets) {
    if (all_faces.insert(f.vertex_set).second) frontier.push_back(f.vertex_set);
  }
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& f : p.facets) facet_sets.push_back(f.vertex_set);
  while (!frontier.empty()) {
    std::vector<std::size_t> cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& fs : facet_sets) {
      std::vector<std::size_t> inter;
      std::set_intersection(cur.begin(), cur.end(), fs.begin(), fs.end(),
                            std::back_inserter(inter));
      if (inter.empty() || inter == cur) continue;
      if (all_faces.insert(inter).second) frontier.push_back(inter);
    }
  }
  p.faces.assign(dim, {});
  for (const auto& fs : all_faces) {
    std::vector<IntVec> dirs;
    for (std::size_t k = 1; k < fs.size(); ++k) {
      dirs.push_back(sub(zs[fs[k]], zs[fs[0]]));
    }
    std::size_t fdim = dirs.empty() ? 0 : rank(IntMatrix::from_rows(dirs));
    if (fdim < dim) p.faces[fdim].push_back(fs);
  }
  for (auto& level : p.faces) std::sort(level.begin(), level.end());
  p.f_vector.clear();
  for (const auto& level : p.faces) p.f_vector.push_back(level.size());
  return p;
}

}  // namespace

std::pair<Int, Int> multidegree(const Polytope& p, const ExponentSequence& e) {
  if (p.vertices.empty()) throw std::invalid_argument("empty polytope");
  Int deg1, deg2;
  bool first = true;
  for (const IntVec& v : p.vertices) {
    Int s1 = 0, s2 = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      s1 += v[j];
      s2 += e[j] * v[j];
    }
    if (first) {
      deg1 = s1;
      deg2 = s2;
      first = false;
    } else if (s1 != deg1 || s2 != deg2) {
      throw MathError("not Lambda-homogeneous");
    }
  }
  return {deg1, deg2};
}

WeightedConeFan retropicalize(const Polytope& p) {
  if (p.degenerate_dim) {
    throw std::invalid_argument("retropicalize requires a full-dimensional polytope");
  }
  WeightedConeFan fan;
  fan.ambient = p.vertices.empty() ? 0 : p.vertices[0].size();
  fan.lineality = p.lineality;
  if (p.dim == 1) {
    // the normal fan's codim-1 skeleton is the lineality space itself,
    // weighted by the lattice length of the segment
    WeightedConeFan::MaxCone c;
    c.weight = Rat(content(sub(p.vertices[1], p.vertices[0])));
    std::vector<IntVec> gens = fan.lineality;
    c.normal = codim1_normal(gens, fan.ambient);
    fan.cones.push_back(std::move(c));
    return fan;
  }
  for (const auto& edge : p.faces[1]) {
    // endpoints: extremes among collinear points (faces hold vertices only)
    if (edge.size() < 2) throw MathError("edge with fewer than two vertices");
    const IntVec& v0 = p.vertices[edge.front()];
    const IntVec& v1 = p.vertices[edge.back()];
    WeightedConeFan::MaxCone c;
    c.weight = Rat(content(sub(v1, v0)));
    for (const auto& facet : p.facets) {
      if (std::includes(facet.vertex_set.begin(), facet.vertex_set.end(),
                        edge.begin(), edge.end())) {
        c.rays.push_back(facet.normal);
      }
    }
    std::vector<IntVec> gens = c.rays;
    gens.insert(gens.end(), fan.lineality.begin(), fan.lineality.end());
    c.normal = codim1_normal(gens, fan.ambient);
    fan.cones.push_back(std::move(c));
  }
  return fan;
}

bool weighted_cone_sets_equal(const WeightedConeFan& a,
                              const WeightedConeFan& b, std::string* why) {
  Quotient q(a.lineality, a.ambient);
  auto canonical = [&](const WeightedConeFan& f) {
    std::map<std::vector<IntVec>, Rat> m;
    for (const auto& c : f.cones) {
      std::set<IntVec> keyset;
      for (const IntVec& r : c.rays) keyset.insert(q.primitive_ray(r));
      std::vector<IntVec> key(keyset.begin(), keyset.end());
      m[key] += c.weight;
    }
    return m;
  };
  auto ca = canonical(a), cb = canonical(b);
  if (ca == cb) return true;
  if (why) {
    *why = "weighted cone sets differ";
    for (const auto& [k, w] : ca) {
      auto it = cb.find(k);
      if (it == cb.end()) {
        *why += "; only-left cone";
        for (const IntVec& r : k) *why += " " + vec_to_string(r);
      } else if (it->second != w) {
        *why += "; weight differs on";
        for (const IntVec& r : k) *why += " " + vec_to_string(r);
      }
    }
    for (const auto& [k, w] : cb) {
      if (!ca.count(k)) {
        *why += "; only-right cone";
        for (const IntVec& r : k) *why += " " + vec_to_string(r);
      }
    }
  }
  return false;
}

std::string vertex_matrix_text(const Polytope& p) {
  std::string out;
  for (const IntVec& v : p.vertices) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) out += " ";
      out += v[j].str();
    }
    out += "\n";
  }
  return out;
}

}  // namespace tropsec
