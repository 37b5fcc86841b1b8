#include "rigid/graph/catalog.hpp"

#include <mutex>

#include "rigid/graph/canonical.hpp"
#include "rigid/io/json_io.hpp"

namespace rigid {

extern const char* const kCatalogJson;

namespace {

// Lengths printed on another labelling of the same graph; move them onto the entry's labels.
LengthAssignment map_onto(const RigidGraph& target, LengthAssignment l, const std::string& what) {
  std::vector<Edge> es;
  for (const auto& [e, v] : l.values()) es.push_back(e);
  RigidGraph own(what, target.geometry(), target.vertex_count(), es);
  const auto phi = find_isomorphism(own, target);
  if (!phi) throw GraphError("catalog lengths '" + what + "' are not on a graph isomorphic to " + target.name());
  std::map<Edge, double> out;
  for (const auto& [e, v] : l.values()) out[Edge((*phi)[e.a], (*phi)[e.b])] = v;
  return LengthAssignment(l.geometry(), std::move(out));
}

std::vector<CatalogEntry> load() {
  const Json doc = Json::parse(kCatalogJson);
  std::vector<CatalogEntry> entries;
  for (const auto& j : doc.at("entries")) {
    CatalogEntry e;
    e.graph = graph_from_json(j.at("graph"));
    if (j.contains("known_complex")) e.known_complex = j["known_complex"].get<int>();
    if (j.contains("known_real")) e.known_real = j["known_real"].get<int>();
    if (j.contains("known_sphere_complex")) e.known_sphere_complex = j["known_sphere_complex"].get<int>();
    e.note = j.value("note", std::string());
    for (const auto& f : j.value("flags", Json::array())) e.flags.push_back(f.get<std::string>());
    for (const auto& v : j.value("cm_variables", Json::array())) e.cm_variables.emplace_back(v[0].get<int>(), v[1].get<int>());
    for (const auto& lj : j.value("lengths", Json::array())) {
      PublishedLengths p;
      p.label = lj.at("label").get<std::string>();
      p.realized = lj.at("realized").get<int>();
      LengthAssignment raw = lengths_from_json(lj);
      // Printed edge keys that must be corrected before the labelling can be matched.
      if (lj.contains("edge_fixes")) {
        auto vals = raw.values();
        for (const auto& fx : lj["edge_fixes"]) {
          const Edge from = edge_from_key(fx[0].get<std::string>());
          const Edge to = edge_from_key(fx[1].get<std::string>());
          const double v = vals.at(from);
          vals.erase(from);
          vals[to] = v;
        }
        raw = LengthAssignment(raw.geometry(), std::move(vals));
      }
      const RigidGraph g = e.graph.with_geometry(raw.geometry());
      if (lj.value("labeling", std::string("graph")) == "isomorphic")
        p.lengths = map_onto(g, raw, e.graph.name() + "/" + p.label);
      else
        p.lengths = raw;
      p.lengths.validate_for(g);
      if (auto c = e.complex_count(raw.geometry()); c && p.realized > *c)
        throw GraphError("catalog entry " + e.graph.name() + ": realized count above complex count");
      e.published.push_back(std::move(p));
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace

const PublishedLengths& CatalogEntry::lengths(const std::string& label) const {
  for (const auto& p : published)
    if (p.label == label) return p;
  throw GraphError("entry " + graph.name() + " has no length set '" + label + "'");
}

std::optional<int> CatalogEntry::complex_count(Geometry g) const {
  if (g == Geometry::Sphere && graph.geometry() != Geometry::Sphere) return known_sphere_complex;
  if (g == graph.geometry()) return known_complex;
  return std::nullopt;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = load();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.graph.name() == name) return e;
  throw GraphError("unknown catalog entry '" + name + "'");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog()) out.push_back(e.graph.name());
  return out;
}

}  // namespace rigid
