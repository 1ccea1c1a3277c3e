#ifndef TROPSEC_IO_HPP
#define TROPSEC_IO_HPP

#include "tropsec/chow.hpp"
#include "tropsec/groebner.hpp"
#include "tropsec/polytope.hpp"

#include <string>

namespace tropsec {

// JSON conventions: integers as decimal strings (arbitrary precision safe),
// rationals as {"num","den"} pairs, nodes keyed by canonical label strings.
std::string to_json(const RayGraph& g);
std::string to_json(const TropicalFan& f);
std::string to_json(const Polytope& p);
std::string to_json(const SecantComplex& sc);

RayGraph ray_graph_from_json(const std::string& text);
TropicalFan tropical_fan_from_json(const std::string& text);
Polytope polytope_from_json(const std::string& text);

NodeLabel parse_label(const std::string& s);

// DOT export with edge-weight annotations and node families colored.
std::string to_dot(const RayGraph& g);

}  // namespace tropsec

#endif  // TROPSEC_IO_HPP
