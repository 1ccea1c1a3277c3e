#ifndef TROPSEC_POLYTOPE_HPP
#define TROPSEC_POLYTOPE_HPP

#include "tropsec/secantgraph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tropsec {

// Weighted codimension-one fan presented for shooting: every maximal cone
// carries its primitive span normal.
struct WeightedConeFan {
  std::size_t ambient = 0;
  std::vector<IntVec> lineality;
  struct MaxCone {
    std::vector<IntVec> rays;
    Rat weight;
    IntVec normal;  // primitive, orthogonal to rays and lineality
  };
  std::vector<MaxCone> cones;
};

// Cones over the edges of a weighted graph (plus its lineality).
WeightedConeFan fan_from_graph(const RayGraph& g);
WeightedConeFan fan_from_secant(const SecantFan& fan);

struct DegenerateRay : MathError {
  explicit DegenerateRay(const std::string& what) : MathError(what) {}
};

struct ShootCrossing {
  Rat t;
  std::size_t cone;
  Rat multiplicity;
  IntVec normal;  // oriented so the shooting-direction coordinate is positive
};

struct ShootRay {
  std::vector<ShootCrossing> crossings;  // sorted by t
  Int coordinate;
};

struct ShootResult {
  IntVec objective;
  std::vector<ShootRay> rays;  // one per coordinate direction
  IntVec vertex;
};

// Vertex of the dual polytope selected by the objective w (the w-minimal
// vertex): coordinate i is the weighted count of fan crossings along
// w + t e_i, t > 0. Throws DegenerateRay when w is not generic.
ShootResult ray_shoot(const WeightedConeFan& fan, const IntVec& w);

struct EnumerateOptions {
  std::uint64_t seed = 20250810;
  std::size_t max_chambers = 200000;
  int retry_limit = 64;
};

struct EnumerationResult {
  std::vector<IntVec> vertices;   // sorted, deduped
  std::size_t chamber_count = 0;  // complement chambers discovered by the walk
};

// Complete vertex set by chamber BFS: step just past each crossing to reach
// the adjacent chamber, shoot again, dedupe by exact vertex equality. Every
// stepped shoot is asserted against the wall-crossing prediction
// v' = v - m * normal.
EnumerationResult enumerate_vertices(const WeightedConeFan& fan,
                                     const EnumerateOptions& opt = {});

// Randomized cross-check: shoot from independently drawn objectives until
// the vertex set is stable for `stability` consecutive successful draws.
std::vector<IntVec> randomized_vertices(const WeightedConeFan& fan,
                                        std::uint64_t seed,
                                        std::size_t stability);

struct Polytope {
  std::vector<IntVec> vertices;  // ambient coordinates, sorted
  struct Facet {
    IntVec normal;  // inner normal in ambient coordinates, orthogonal to lineality
    Int offset;     // normal . x >= offset on the polytope
    std::vector<std::size_t> vertex_set;
  };
  std::vector<Facet> facets;
  // faces[k] = vertex index sets of the k-dimensional faces, k = 0..dim-1
  std::vector<std::vector<std::vector<std::size_t>>> faces;
  std::vector<std::size_t> f_vector;
  std::size_t dim = 0;
  bool degenerate_dim = false;  // affine dimension below the quotient dimension
  std::vector<IntVec> lineality;
};

// Exact convex hull in the quotient modulo `lineality`; facet inequalities
// by incremental insertion with exact orientation predicates, face lattice
// by closing facet-vertex incidences under intersection. Interior points are
// rejected (only the vertex subset is kept).
Polytope convex_hull(std::vector<IntVec> points,
                     const std::vector<IntVec>& lineality);

// (sum of coordinates, weighted sum against the exponent vector); all
// vertices must agree on both.
std::pair<Int, Int> multidegree(const Polytope& p, const ExponentSequence& e);

// Codimension-one skeleton of the inner normal fan, each cone weighted by
// the lattice length of its dual edge.
WeightedConeFan retropicalize(const Polytope& p);

// Weighted-set comparison of codim-1 fans modulo their (shared) lineality:
// canonical cone keys with summed weights.
bool weighted_cone_sets_equal(const WeightedConeFan& a,
                              const WeightedConeFan& b, std::string* why);

// Plain integer-matrix text export of the vertex list (sorted, one vertex
// per line) for handoff to external lattice-point counters.
std::string vertex_matrix_text(const Polytope& p);

}  // namespace tropsec

#endif  // TROPSEC_POLYTOPE_HPP
