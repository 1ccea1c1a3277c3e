#include "tropsec/chow.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropsec {

namespace {

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n,
                                                      std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> sel(k);
  for (std::size_t i = 0; i < k; ++i) sel[i] = i;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(sel);
    std::size_t i = k;
    bool advanced = false;
    while (i-- > 0) {
      if (sel[i] + (k - i) < n) {
        ++sel[i];
        for (std::size_t t = i + 1; t < k; ++t) sel[t] = sel[t - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

}  // namespace

ChowFan chow_map(const SecantFan& fan, std::size_t d) {
  const std::size_t n = fan.e.n();
  const std::size_t ambient = n + 1;
  ChowFan cf;
  cf.d = d;
  cf.ambient = ambient;
  cf.lineality = fan.lin.generators();
  Quotient mod_ones({fan.lin.l1}, ambient);
  if (n < d + 1) throw std::invalid_argument("chow_map: dimension too large");
  const std::size_t jsize = n - d - 1;

  std::vector<std::vector<std::size_t>> js = subsets_of_size(ambient, jsize);
  for (const SecantCone& sc : fan.cones) {
    const IntVec& x = fan.rays.at(sc.a);
    const IntVec& y = fan.rays.at(sc.b);
    IntMatrix span = IntMatrix::from_rows(
        {mod_ones.project(x), mod_ones.project(y), mod_ones.project(fan.lin.l2)});
    if (rank(span) != d) {
      throw MathError("secant cone with unexpected dimension in TPP^n");
    }
    IntMatrix sigma_basis = saturation_basis(span);  // d rows in Z^n
    for (const auto& j : js) {
      std::vector<IntVec> cols;
      for (std::size_t r = 0; r < d; ++r) cols.push_back(sigma_basis.row(r));
      for (std::size_t idx : j) {
        cols.push_back(scale(-1, mod_ones.project(unit_vector(ambient, idx))));
      }
      IntMatrix a = IntMatrix::from_cols(cols);
      if (rank(a) != n - 1) continue;  // discarded pair
      Int g = gcd_of_maximal_minors(a, n - 1);
      ChowFan::ChowCone cone;
      cone.sigma_rays = {x, y};
      cone.orthant.assign(j.begin(), j.end());
      cone.weight = sc.weight * Rat(g);
      cf.cones.push_back(std::move(cone));
    }
  }
  return cf;
}

WeightedConeFan fan_from_chow(const ChowFan& cf) {
  WeightedConeFan fan;
  fan.ambient = cf.ambient;
  fan.lineality = cf.lineality;
  for (const auto& c : cf.cones) {
    WeightedConeFan::MaxCone mc;
    mc.rays = c.sigma_rays;
    for (std::size_t j : c.orthant) {
      mc.rays.push_back(scale(-1, unit_vector(cf.ambient, j)));
    }
    mc.weight = c.weight;
    std::vector<IntVec> gens = mc.rays;
    gens.insert(gens.end(), fan.lineality.begin(), fan.lineality.end());
    IntMatrix rows = IntMatrix::from_rows(gens);
    if (rank(rows) + 1 != fan.ambient) {
      throw MathError("chow cone is not codimension one");
    }
    std::optional<IntVec> nu = kernel_vector(rows);
    if (!nu) throw MathError("chow normal computation failed");
    mc.normal = *nu;
    fan.cones.push_back(std::move(mc));
  }
  return fan;
}

namespace {

// Primitive generator of (span(tau + r) cap Z^N) / (span(tau) cap Z^N)
// lifted to the r side.
IntVec transverse_generator(const std::vector<IntVec>& tau_gens,
                            const IntVec& r) {
  IntMatrix tau_sat = saturation_basis(IntMatrix::from_rows(tau_gens));
  std::vector<IntVec> all = tau_gens;
  all.push_back(r);
  IntMatrix sigma_sat = saturation_basis(IntMatrix::from_rows(all));
  if (sigma_sat.rows() != tau_sat.rows() + 1) {
    throw MathError("transverse_generator: rank mismatch");
  }
  // coordinates of tau_sat rows inside sigma_sat
  IntMatrix coords(tau_sat.rows(), sigma_sat.rows());
  for (std::size_t i = 0; i < tau_sat.rows(); ++i) {
    std::optional<RatVec> c = coordinates_in_row_basis(sigma_sat, tau_sat.row(i));
    if (!c) throw MathError("transverse_generator: coordinate failure");
    for (std::size_t k = 0; k < sigma_sat.rows(); ++k) {
      if (boost::multiprecision::denominator((*c)[k]) != 1) {
        throw MathError("transverse_generator: non-integral coordinates");
      }
      coords(i, k) = boost::multiprecision::numerator((*c)[k]);
    }
  }
  IntMatrix full = complete_to_unimodular(coords);
  IntVec u_coords = full.row(tau_sat.rows());
  IntVec u(sigma_sat.cols(), 0);
  for (std::size_t k = 0; k < sigma_sat.rows(); ++k) {
    u = add(u, scale(u_coords[k], sigma_sat.row(k)));
  }
  // orient towards r
  std::optional<RatVec> rc = coordinates_in_row_basis(
      IntMatrix::from_rows([&] {
        std::vector<IntVec> rows = tau_sat.row_list();
        rows.push_back(u);
        return rows;
      }()),
      r);
  if (!rc) throw MathError("transverse_generator: orientation failure");
  if (rc->back() < 0) u = scale(-1, u);
  return u;
}

}  // namespace

bool codim1_fan_balanced(const WeightedConeFan& fan, std::string* why) {
  Quotient q(fan.lineality, fan.ambient);
  struct RidgeData {
    std::vector<IntVec> gens;  // ridge generators incl. lineality
    RatVec sum;
  };
  std::map<std::vector<IntVec>, RidgeData> ridges;
  for (const auto& cone : fan.cones) {
    for (std::size_t drop = 0; drop < cone.rays.size(); ++drop) {
      std::set<IntVec> key;
      std::vector<IntVec> gens = fan.lineality;
      for (std::size_t k = 0; k < cone.rays.size(); ++k) {
        if (k == drop) continue;
        key.insert(q.primitive_ray(cone.rays[k]));
        gens.push_back(cone.rays[k]);
      }
      std::vector<IntVec> keyv(key.begin(), key.end());
      auto it = ridges.find(keyv);
      if (it == ridges.end()) {
        RidgeData rd;
        rd.gens = gens;
        rd.sum.assign(fan.ambient, Rat(0));
        it = ridges.emplace(keyv, std::move(rd)).first;
      }
      IntVec u = transverse_generator(it->second.gens, cone.rays[drop]);
      for (std::size_t i = 0; i < fan.ambient; ++i) {
        it->second.sum[i] += cone.weight * Rat(u[i]);
      }
    }
  }
  for (const auto& [key, rd] : ridges) {
    // the weighted sum must fall back into the ridge span
    Int l = 1;
    for (const Rat& x : rd.sum) {
      l = lcm_int(l, boost::multiprecision::denominator(x));
    }
    IntVec s(fan.ambient);
    for (std::size_t i = 0; i < fan.ambient; ++i) {
      s[i] = boost::multiprecision::numerator(rd.sum[i]) *
             (l / boost::multiprecision::denominator(rd.sum[i]));
    }
    std::vector<IntVec> rows = rd.gens;
    std::size_t base = rank(IntMatrix::from_rows(rows));
    rows.push_back(s);
    if (rank(IntMatrix::from_rows(rows)) != base) {
      if (why) {
        *why = "unbalanced ridge, residual " + vec_to_string(s);
      }
      return false;
    }
  }
  return true;
}

ChowPolytopeResult chow_polytope(const ExponentSequence& e,
                                 const EnumerateOptions& opt) {
  if (e.n() < 5) {
    throw std::invalid_argument(
        "chow_polytope requires n >= 5; use the Newton polytope pipeline");
  }
  SecantFan fan = secant_fan(e);
  ChowFan cf = chow_map(fan, 3);
  WeightedConeFan wf = fan_from_chow(cf);
  EnumerationResult en = enumerate_vertices(wf, opt);
  ChowPolytopeResult res;
  res.polytope = convex_hull(en.vertices, wf.lineality);
  res.degrees = multidegree(res.polytope, e);
  res.chamber_count = en.chamber_count;
  return res;
}

ChowDegreeReport chow_degree_report(const ChowPolytopeResult& r,
                                    const ExponentSequence& e) {
  ChowDegreeReport rep;
  rep.degree_ones = r.degrees.first;
  rep.degree_weighted = r.degrees.second;
  rep.codim = Int(e.n()) - 3;
  rep.ones_divisible = rep.degree_ones % rep.codim == 0;
  rep.weighted_divisible = rep.degree_weighted % rep.codim == 0;
  return rep;
}

}  // namespace tropsec
