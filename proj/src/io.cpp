#include "tropsec/io.hpp"

#include <json.hpp>

#include <sstream>

namespace tropsec {

using nlohmann::json;

namespace {

json vec_json(const IntVec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(x.str());
  return a;
}

json vec_json(const RatVec& v) {
  json a = json::array();
  for (const Rat& x : v) {
    if (boost::multiprecision::denominator(x) == 1) {
      a.push_back(boost::multiprecision::numerator(x).str());
    } else {
      a.push_back(json{{"num", boost::multiprecision::numerator(x).str()},
                       {"den", boost::multiprecision::denominator(x).str()}});
    }
  }
  return a;
}

IntVec vec_from_json(const json& a) {
  IntVec v;
  for (const auto& x : a) v.push_back(Int(x.get<std::string>()));
  return v;
}

json weight_json(const Rat& w) {
  if (boost::multiprecision::denominator(w) == 1) {
    return boost::multiprecision::numerator(w).str();
  }
  return json{{"num", boost::multiprecision::numerator(w).str()},
              {"den", boost::multiprecision::denominator(w).str()}};
}

Rat weight_from_json(const json& j) {
  if (j.is_string()) return Rat(Int(j.get<std::string>()));
  return Rat(Int(j.at("num").get<std::string>())) /
         Rat(Int(j.at("den").get<std::string>()));
}

json lineality_json(const std::vector<IntVec>& lin) {
  json a = json::array();
  for (const IntVec& l : lin) a.push_back(vec_json(l));
  return a;
}

std::vector<IntVec> lineality_from_json(const json& a) {
  std::vector<IntVec> lin;
  for (const auto& l : a) lin.push_back(vec_from_json(l));
  return lin;
}

}  // namespace

NodeLabel parse_label(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty node label");
  auto payload = [&](char open) {
    std::size_t lb = s.find(open);
    return s.substr(lb + 1, s.size() - lb - 2);
  };
  if (s[0] == 'F' && s.size() > 1 && s[1] == '{') {
    IntVec subset;
    std::stringstream ss(payload('{'));
    std::string tok;
    while (std::getline(ss, tok, ',')) subset.push_back(Int(tok));
    return NodeLabel::f(subset);
  }
  if (s[0] == 'P' && s.size() > 1 && s[1] == '{') {
    return NodeLabel::p(payload('{'));
  }
  auto numeric_tail = [&](std::size_t from) {
    if (from >= s.size()) return false;
    for (std::size_t i = from; i < s.size(); ++i) {
      if (!isdigit(s[i]) && !(i == from && s[i] == '-')) return false;
    }
    return true;
  };
  if (s[0] == 'D' && numeric_tail(1)) return NodeLabel::d(Int(s.substr(1)));
  if (s[0] == 'E' && numeric_tail(1)) return NodeLabel::e(Int(s.substr(1)));
  if (s[0] == 'h' && numeric_tail(1)) return NodeLabel::h(Int(s.substr(1)));
  if (s[0] == 'V' && numeric_tail(1)) return NodeLabel::v(Int(s.substr(1)));
  return NodeLabel::aux(s);
}

std::string to_json(const RayGraph& g) {
  json j;
  j["type"] = "raygraph";
  j["ambient"] = g.ambient_dim;
  j["lineality"] = lineality_json(g.lineality);
  json nodes = json::object();
  for (const auto& [l, v] : g.nodes()) nodes[l.str()] = vec_json(v);
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& [k, w] : g.edges()) {
    edges.push_back(json{{"a", k.first.str()},
                         {"b", k.second.str()},
                         {"weight", weight_json(w)}});
  }
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

RayGraph ray_graph_from_json(const std::string& text) {
  json j = json::parse(text);
  RayGraph g;
  g.ambient_dim = j.at("ambient").get<std::size_t>();
  g.lineality = lineality_from_json(j.at("lineality"));
  for (const auto& [key, val] : j.at("nodes").items()) {
    g.add_node(parse_label(key), vec_from_json(val));
  }
  for (const auto& e : j.at("edges")) {
    g.add_edge(parse_label(e.at("a").get<std::string>()),
               parse_label(e.at("b").get<std::string>()),
               weight_from_json(e.at("weight")));
  }
  return g;
}

std::string to_json(const TropicalFan& f) {
  json j;
  j["type"] = "tropicalfan";
  j["ambient"] = f.ambient_dim;
  j["lineality"] = lineality_json(f.lineality);
  json rays = json::object();
  for (const auto& [l, v] : f.rays) rays[l.str()] = vec_json(v);
  j["rays"] = rays;
  json cones = json::array();
  auto sorted = f.cones;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.first < b.first;
  });
  for (const auto& [labels, w] : sorted) {
    json c;
    c["rays"] = json::array();
    for (const NodeLabel& l : labels) c["rays"].push_back(l.str());
    c["weight"] = weight_json(w);
    cones.push_back(c);
  }
  j["cones"] = cones;
  return j.dump(2) + "\n";
}

TropicalFan tropical_fan_from_json(const std::string& text) {
  json j = json::parse(text);
  TropicalFan f;
  f.ambient_dim = j.at("ambient").get<std::size_t>();
  f.lineality = lineality_from_json(j.at("lineality"));
  for (const auto& [key, val] : j.at("rays").items()) {
    f.rays[parse_label(key)] = vec_from_json(val);
  }
  for (const auto& c : j.at("cones")) {
    std::vector<NodeLabel> labels;
    for (const auto& l : c.at("rays")) {
      labels.push_back(parse_label(l.get<std::string>()));
    }
    f.cones.push_back({labels, weight_from_json(c.at("weight"))});
  }
  return f;
}

std::string to_json(const Polytope& p) {
  json j;
  j["type"] = "polytope";
  j["dim"] = p.dim;
  j["degenerate_dim"] = p.degenerate_dim;
  j["lineality"] = lineality_json(p.lineality);
  json verts = json::array();
  for (const IntVec& v : p.vertices) verts.push_back(vec_json(v));
  j["vertices"] = verts;
  json facets = json::array();
  for (const auto& f : p.facets) {
    facets.push_back(json{{"normal", vec_json(f.normal)},
                          {"offset", f.offset.str()},
                          {"vertices", f.vertex_set}});
  }
  j["facets"] = facets;
  j["f_vector"] = p.f_vector;
  json faces = json::array();
  for (const auto& level : p.faces) {
    json lv = json::array();
    for (const auto& f : level) lv.push_back(f);
    faces.push_back(lv);
  }
  j["faces"] = faces;
  return j.dump(2) + "\n";
}

Polytope polytope_from_json(const std::string& text) {
  json j = json::parse(text);
  Polytope p;
  p.dim = j.at("dim").get<std::size_t>();
  p.degenerate_dim = j.at("degenerate_dim").get<bool>();
  p.lineality = lineality_from_json(j.at("lineality"));
  for (const auto& v : j.at("vertices")) p.vertices.push_back(vec_from_json(v));
  for (const auto& f : j.at("facets")) {
    Polytope::Facet facet;
    facet.normal = vec_from_json(f.at("normal"));
    facet.offset = Int(f.at("offset").get<std::string>());
    facet.vertex_set = f.at("vertices").get<std::vector<std::size_t>>();
    p.facets.push_back(std::move(facet));
  }
  p.f_vector = j.at("f_vector").get<std::vector<std::size_t>>();
  for (const auto& level : j.at("faces")) {
    std::vector<std::vector<std::size_t>> lv;
    for (const auto& f : level) lv.push_back(f.get<std::vector<std::size_t>>());
    p.faces.push_back(std::move(lv));
  }
  return p;
}

std::string to_json(const SecantComplex& sc) {
  json j;
  j["type"] = "secantcomplex";
  json verts = json::array();
  for (const RatVec& v : sc.vertices) verts.push_back(vec_json(v));
  j["vertices"] = verts;
  json edges = json::array();
  for (std::size_t k = 0; k + 1 < sc.vertices.size(); ++k) {
    edges.push_back(json::array({k, k + 1}));
  }
  j["chain_edges"] = edges;
  return j.dump(2) + "\n";
}

std::string to_dot(const RayGraph& g) {
  std::ostringstream out;
  out << "graph tropsec {\n";
  out << "  node [style=filled];\n";
  for (const auto& [l, v] : g.nodes()) {
    std::string color = "white";
    switch (l.kind) {
      case NodeLabel::Kind::D: color = "lightblue"; break;
      case NodeLabel::Kind::E: color = "lightgray"; break;
      case NodeLabel::Kind::H: color = "wheat"; break;
      case NodeLabel::Kind::F: color = "salmon"; break;
      case NodeLabel::Kind::P: color = "palegreen"; break;
      default: break;
    }
    out << "  \"" << l.str() << "\" [fillcolor=" << color << "];\n";
  }
  for (const auto& [k, w] : g.edges()) {
    out << "  \"" << k.first.str() << "\" -- \"" << k.second.str()
        << "\" [label=\"";
    if (boost::multiprecision::denominator(w) == 1) {
      out << boost::multiprecision::numerator(w).str();
    } else {
      out << boost::multiprecision::numerator(w).str() << "/"
          << boost::multiprecision::denominator(w).str();
    }
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tropsec
