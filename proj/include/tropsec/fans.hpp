#ifndef TROPSEC_FANS_HPP
#define TROPSEC_FANS_HPP

#include "tropsec/matrix.hpp"
#include "tropsec/numeric.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tropsec {

// Normalized exponent sequence (0 = i_0 < i_1 < ... < i_n, gcd = 1). The
// single input of the whole pipeline.
struct ExponentSequence {
  IntVec e;  // includes the leading 0
  std::size_t n() const { return e.size() - 1; }
  const Int& operator[](std::size_t j) const { return e[j]; }

  // gcd(e[lo..hi]) inclusive; 0 when the range is empty (lo > hi).
  Int gcd_range_incl(std::size_t lo, std::size_t hi) const {
    Int g = 0;
    for (std::size_t j = lo; j <= hi && j < e.size(); ++j) g = gcd_int(g, e[j]);
    return g;
  }

  IntVec all_ones() const { return IntVec(e.size(), Int(1)); }
  IntVec exponent_vector() const { return e; }  // (0, i_1, ..., i_n)
};

struct NodeLabel {
  enum class Kind { D, E, H, F, P, V, Aux };
  Kind kind = Kind::Aux;
  Int value = 0;           // exponent value for D/E/H, index for V
  IntVec subset;           // F payload (sorted exponent values)
  std::string name;        // P descriptor or Aux name

  static NodeLabel d(const Int& v) { return {Kind::D, v, {}, ""}; }
  static NodeLabel e(const Int& v) { return {Kind::E, v, {}, ""}; }
  static NodeLabel h(const Int& v) { return {Kind::H, v, {}, ""}; }
  static NodeLabel f(IntVec s) { return {Kind::F, 0, std::move(s), ""}; }
  static NodeLabel p(std::string desc) {
    return {Kind::P, 0, {}, std::move(desc)};
  }
  static NodeLabel v(const Int& k) { return {Kind::V, k, {}, ""}; }
  static NodeLabel aux(std::string n) {
    return {Kind::Aux, 0, {}, std::move(n)};
  }

  std::string str() const;

  auto tie() const { return std::tie(kind, value, subset, name); }
  bool operator<(const NodeLabel& o) const { return tie() < o.tie(); }
  bool operator==(const NodeLabel& o) const { return tie() == o.tie(); }
  bool operator!=(const NodeLabel& o) const { return !(*this == o); }
};

using EdgeKey = std::pair<NodeLabel, NodeLabel>;

inline EdgeKey make_edge_key(const NodeLabel& a, const NodeLabel& b) {
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

// Weighted graph whose nodes carry integer vectors. Edge weights are exact
// rationals; integrality is asserted at finalization (the 1/2 factors of the
// secant-graph weight formula make intermediate halves legitimate).
class RayGraph {
 public:
  std::size_t ambient_dim = 0;
  std::vector<IntVec> lineality;

  void add_node(const NodeLabel& l, IntVec v, bool keep_always = false);
  void add_edge(const NodeLabel& a, const NodeLabel& b, const Rat& w);

  bool has_node(const NodeLabel& l) const { return nodes_.count(l) > 0; }
  const IntVec& node_vector(const NodeLabel& l) const;
  const std::map<NodeLabel, IntVec>& nodes() const { return nodes_; }
  const std::map<EdgeKey, Rat>& edges() const { return edges_; }

  std::size_t degree(const NodeLabel& l) const;
  std::vector<std::pair<NodeLabel, Rat>> neighbors(const NodeLabel& l) const;

  void remove_node(const NodeLabel& l);  // drops incident edges
  void remove_edge(const NodeLabel& a, const NodeLabel& b);
  void set_keep(const NodeLabel& l) { keep_.insert(l); }
  bool kept(const NodeLabel& l) const { return keep_.count(l) > 0; }

  // Relabels a node, merging into an existing node when the target label is
  // already present (edge weights summed on collisions; the vectors must
  // then agree up to the stated check being done by the caller).
  void identify_nodes(const NodeLabel& from, const NodeLabel& into);

  // Throws MathError when some edge weight is not a positive integer.
  void assert_integral_weights() const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

 private:
  std::map<NodeLabel, IntVec> nodes_;
  std::map<EdgeKey, Rat> edges_;
  std::set<NodeLabel> keep_;
};

// Polyhedral cone given by generators: nonnegative combinations of `rays`
// plus arbitrary combinations of `lineality`.
struct Cone {
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;

  std::size_t ambient() const {
    return rays.empty() ? (lineality.empty() ? 0 : lineality[0].size())
                        : rays[0].size();
  }
  std::size_t dim() const;
};

// Weighted fan: a lineality lattice plus a list of weighted cones given by
// node labels resolving through a shared node map.
struct TropicalFan {
  std::size_t ambient_dim = 0;
  std::vector<IntVec> lineality;
  std::map<NodeLabel, IntVec> rays;
  // maximal cones as ray-label tuples with weights
  std::vector<std::pair<std::vector<NodeLabel>, Rat>> cones;

  Cone cone_at(std::size_t idx) const;
};

// Certificate for cone membership: exact coefficients on rays (nonnegative)
// and lineality (unconstrained).
struct ConeCertificate {
  RatVec ray_coeffs;
  RatVec lin_coeffs;
};

// Membership for simplicial cones (generators independent modulo lineality).
// Returns the certificate when the point lies in the cone.
std::optional<ConeCertificate> cone_contains(const Cone& cone,
                                             const RatVec& point);
std::optional<ConeCertificate> cone_contains(const Cone& cone,
                                             const IntVec& point);

// Membership for arbitrary generator sets (LP feasibility, exact).
bool cone_member(const Cone& cone, const IntVec& point);

// Generators of the intersection of two cones (exact double description in
// the parameter space).
Cone intersect_cones(const Cone& a, const Cone& b);

enum class IntersectionKind {
  DisjointAtZero,
  NodalCrossing,
  InternalCrossing,
  PartialOverlap,
  CompleteOverlap,
};

std::string to_string(IntersectionKind k);

struct IntersectionResult {
  std::size_t dim = 0;
  IntersectionKind kind = IntersectionKind::DisjointAtZero;
  Cone intersection;
};

// Dimension and classification of the intersection of two cones sharing the
// same lineality: complete overlap (equal), partial overlap (dim = max, not
// equal), nodal crossing (dim max-1, common face of both), internal crossing
// (dim max-1, not a common face).
IntersectionResult cones_intersection_dim(const Cone& a, const Cone& b);

// Canonical coordinates modulo a saturated lineality lattice. project() maps
// onto Z^(n+1-k); lift() is a section of project().
class Quotient {
 public:
  Quotient() = default;
  explicit Quotient(const std::vector<IntVec>& lineality, std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t quotient_dim() const { return proj_.rows(); }

  IntVec project(const IntVec& v) const;
  RatVec project(const RatVec& v) const;
  // primitive representative of the image ray; throws when v projects to 0
  IntVec primitive_ray(const IntVec& v) const;
  IntVec lift(const IntVec& q) const;

 private:
  std::size_t ambient_ = 0;
  IntMatrix proj_;
  IntMatrix lift_;
};

struct BivalentReport {
  std::vector<NodeLabel> removed;
  // nodes left in place with a reason (unequal weights signal a bug upstream)
  std::vector<std::pair<NodeLabel, std::string>> retained;
};

// Removes every degree-2 node whose two incident edges carry equal weight and
// whose removal keeps the cone set unchanged (the node lies in the relative
// interior of the cone spanned by its neighbours modulo lineality). Nodes
// flagged keep-always are preserved. Idempotent.
BivalentReport eliminate_bivalent_nodes(RayGraph& g);

}  // namespace tropsec

#endif  // TROPSEC_FANS_HPP
