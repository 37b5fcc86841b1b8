#include "rigid/io/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rigid {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_rec(const Json& j, int indent, int level, std::string& out) {
  auto newline = [&](int lv) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lv), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += indent < 0 ? "," : ",";
        first = false;
        newline(level + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), indent, level + 1, out);
      }
      newline(level);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        dump_rec(v, indent, level + 1, out);
      }
      newline(level);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      std::string s = format_double(v);
      // keep floats recognisable as floats
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump17(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

Json graph_to_json(const RigidGraph& g) {
  Json j;
  j["name"] = g.name();
  j["geometry"] = std::string(to_string(g.geometry()));
  j["n"] = g.vertex_count();
  Json es = Json::array();
  for (const auto& e : g.edges()) es.push_back({e.a, e.b});
  j["edges"] = es;
  return j;
}

RigidGraph graph_from_json(const Json& j) {
  try {
    std::vector<Edge> es;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("edge must be a pair");
      es.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return RigidGraph(j.value("name", std::string("graph")), geometry_from_string(j.at("geometry").get<std::string>()),
                      j.at("n").get<int>(), es);
  } catch (const Json::exception& ex) {
    throw InputError(std::string("bad graph JSON: ") + ex.what());
  }
}

Json lengths_to_json(const std::string& graph_name, const LengthAssignment& l) {
  Json j;
  j["graph"] = graph_name;
  j["geometry"] = std::string(to_string(l.geometry()));
  Json m = Json::object();
  for (const auto& [e, v] : l.values()) m[edge_key(e)] = v;
  j["lengths"] = m;
  return j;
}

LengthAssignment lengths_from_json(const Json& j) {
  try {
    std::map<Edge, double> v;
    for (auto it = j.at("lengths").begin(); it != j.at("lengths").end(); ++it)
      v[edge_from_key(it.key())] = it.value().get<double>();
    return LengthAssignment(geometry_from_string(j.at("geometry").get<std::string>()), std::move(v));
  } catch (const Json::exception& ex) {
    throw InputError(std::string("bad lengths JSON: ") + ex.what());
  }
}

Json solution_to_json(const Solution& s) {
  Json j;
  Json c = Json::array();
  for (Eigen::Index i = 0; i < s.x.size(); ++i) c.push_back({s.x[i].real(), s.x[i].imag()});
  j["coords"] = c;
  j["residual"] = s.residual;
  j["class"] = std::string(to_string(s.cls));
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const Json::parse_error& ex) {
    throw InputError("'" + path + "' is not valid JSON: " + ex.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace rigid
