#pragma once

#include <string>

#include <json.hpp>

#include "rigid/algebra/lengths.hpp"
#include "rigid/graph/rigid_graph.hpp"
#include "rigid/solver/solution.hpp"

namespace rigid {

using Json = nlohmann::ordered_json;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// %.17g
std::string format_double(double v);

/// Serialises with every floating-point number at 17 significant digits.
std::string dump17(const Json& j, int indent = -1);

Json graph_to_json(const RigidGraph& g);
RigidGraph graph_from_json(const Json& j);

/// {"graph": name, "geometry": str, "lengths": {"i-j": float}}
Json lengths_to_json(const std::string& graph_name, const LengthAssignment& l);
LengthAssignment lengths_from_json(const Json& j);

/// {"coords": [[re, im], ...], "residual": float, "class": str}
Json solution_to_json(const Solution& s);

Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rigid
