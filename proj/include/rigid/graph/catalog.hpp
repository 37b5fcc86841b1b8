#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigid/algebra/lengths.hpp"
#include "rigid/graph/rigid_graph.hpp"

namespace rigid {

struct PublishedLengths {
  std::string label;
  LengthAssignment lengths;  // keyed by the entry graph's labels
  int realized = 0;          // real embeddings these lengths are known to give
};

/// Named graph with known embedding counts and published length sets.
struct CatalogEntry {
  RigidGraph graph;
  std::optional<int> known_complex;         // in the graph's own geometry
  std::optional<int> known_real;
  std::optional<int> known_sphere_complex;  // Laman graphs on the sphere
  std::vector<PublishedLengths> published;
  std::vector<Edge> cm_variables;  // a variable set with a square Cayley-Menger subsystem
  std::vector<std::string> flags;  // e.g. "figure-transcribed"
  std::string note;

  const PublishedLengths& lengths(const std::string& label) const;
  /// Complex count for geometry g, if known.
  std::optional<int> complex_count(Geometry g) const;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);  // throws GraphError
std::vector<std::string> catalog_names();

}  // namespace rigid
