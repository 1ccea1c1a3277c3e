#ifndef TROPSEC_GROEBNER_HPP
#define TROPSEC_GROEBNER_HPP

#include "tropsec/secantgraph.hpp"

#include <string>
#include <vector>

namespace tropsec {

// An internal crossing between two cones of the secant fan, with the exact
// linear certificates expressing the crossing point inside both cones.
struct CrossingNode {
  IntVec point;        // canonical primitive representative modulo lineality
  EdgeKey parent_a;    // graph edges spanning the two cones
  EdgeKey parent_b;
  std::string case_tag;
  ConeCertificate cert_a;
  ConeCertificate cert_b;
};

struct PartialOverlapEvent {
  EdgeKey outer;  // the containing edge cone
  EdgeKey inner;  // the contained edge cone
};

struct CrossingReport {
  std::vector<CrossingNode> internal_crossings;
  std::vector<PartialOverlapEvent> partial_overlaps;
  std::vector<std::string> warnings;  // clauses predicted but undetected
};

// Exhaustive pairwise classification of the cones over the edges of a
// weighted graph with lineality. Internal crossings and partial overlaps are
// returned with exact certificates; nodal crossings and complete overlaps
// are already encoded in the graph and are excluded. Complete overlaps are
// hard errors (the construction merges them earlier).
CrossingReport detect_crossings_in_graph(const RayGraph& g,
                                         const ExponentSequence& e,
                                         std::size_t threads = 1);

CrossingReport detect_crossings(const SecantFan& fan, std::size_t threads = 1);

// Refinement of the tropical secant graph carrying the fan structure:
// identity for n >= 6, node insertion for n = 5, partial-overlap surgery
// followed by crossing insertion for n = 4. Every detected event must match
// a structural theorem family, otherwise a hard error is raised; families
// predicted by the printed side-conditions but undetected produce warnings
// in the report.
struct RefineResult {
  RayGraph graph;
  CrossingReport report;
};

RefineResult groebner_refine(const RayGraph& g, const ExponentSequence& e,
                             std::size_t threads = 1);

}  // namespace tropsec

#endif  // TROPSEC_GROEBNER_HPP
