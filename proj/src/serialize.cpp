#include "tetracode/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace tetracode {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename Range>
std::string id_array(const Range& ids) {
  std::string out = "[";
  bool first = true;
  for (int id : ids) {
    if (!first) out += ',';
    out += std::to_string(id);
    first = false;
  }
  return out + "]";
}

// Writes `"key": [\n  row,\n  row\n]` with one row per line.
void write_rows(std::ostringstream& os, const char* key, const std::vector<std::string>& rows, bool last) {
  os << "  \"" << key << "\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? ",\n    " : "\n    ") << rows[i];
  os << (rows.empty() ? "]" : "\n  ]") << (last ? "\n" : ",\n");
}

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::string lattice_to_json(const DualLattice& lattice) {
  std::ostringstream os;
  os << "{\n";
  std::vector<std::string> rows;
  for (const auto& v : lattice.vertices()) {
    std::string row = "{\"id\":" + std::to_string(v.id) + ",\"color\":\"" + color_char(v.color) +
                      "\",\"quasi\":" + (v.is_quasi ? "true" : "false") + ",\"position\":[" +
                      std::to_string(v.position[0]) + "," + std::to_string(v.position[1]) + "," +
                      std::to_string(v.position[2]) + "]}";
    rows.push_back(std::move(row));
  }
  write_rows(os, "vertices", rows, false);
  rows.clear();
  for (const auto& e : lattice.edges()) rows.push_back(id_array(e));
  write_rows(os, "edges", rows, false);
  rows.clear();
  for (const auto& f : lattice.faces()) rows.push_back(id_array(f));
  write_rows(os, "faces", rows, false);
  rows.clear();
  for (const auto& t : lattice.tetrahedra()) rows.push_back(id_array(t));
  write_rows(os, "tetrahedra", rows, true);
  os << "}\n";
  return os.str();
}

DualLattice lattice_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("lattice JSON does not parse: ") + e.what());
  }
  try {
    std::vector<Vertex> vertices;
    for (const auto& v : doc.at("vertices")) {
      Vertex vx;
      vx.id = v.at("id").get<int>();
      if (vx.id != static_cast<int>(vertices.size())) throw ContractError("vertex ids must equal their array index");
      vx.color = parse_color(v.at("color").get<std::string>());
      vx.is_quasi = v.at("quasi").get<bool>();
      const auto& pos = v.at("position");
      for (std::size_t i = 0; i < 3; ++i) vx.position[i] = pos.at(i).get<std::int64_t>();
      vertices.push_back(vx);
    }
    std::vector<std::array<int, 4>> tets;
    for (const auto& t : doc.at("tetrahedra")) tets.push_back(t.get<std::array<int, 4>>());
    DualLattice lat(std::move(vertices), std::move(tets));
    // Edges and faces are derived; a mismatch means the file was edited by hand.
    if (doc.at("edges").size() != lat.count(1) || doc.at("faces").size() != lat.count(2))
      throw ContractError("lattice JSON edge or face table does not match its tetrahedra");
    for (std::size_t i = 0; i < lat.count(1); ++i)
      if (doc["edges"][i].get<std::array<int, 2>>() != lat.edges()[i]) throw ContractError("lattice JSON edge order differs");
    for (std::size_t i = 0; i < lat.count(2); ++i)
      if (doc["faces"][i].get<std::array<int, 3>>() != lat.faces()[i]) throw ContractError("lattice JSON face order differs");
    return lat;
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed lattice JSON: ") + e.what());
  }
}

std::string code_to_json(const TetrahedralCode& code) {
  const BoundaryRatio beta = boundary_bulk_ratio(code);
  std::ostringstream os;
  os << "{\n";
  os << "  \"distance\": " << code.distance << ",\n";
  os << "  \"n_qubits\": " << code.n_qubits() << ",\n";
  os << "  \"n_x_stabilizers\": " << code.x_stabilizers.size() << ",\n";
  os << "  \"n_z_stabilizers\": " << code.z_stabilizers.size() << ",\n";
  os << "  \"boundary_qubits\": " << beta.boundary << ",\n";
  os << "  \"bulk_qubits\": " << beta.bulk << ",\n";
  os << "  \"beta\": " << number(beta.value()) << ",\n";
  os << "  \"quasivertices\": {";
  for (Color c : kAllColors)
    os << (c == Color::R ? "" : ", ") << '"' << color_char(c) << "\": " << code.quasi_by_color[static_cast<std::size_t>(index_of(c))];
  os << "},\n";
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < code.x_stabilizers.size(); ++i)
    rows.push_back("{\"vertex\":" + std::to_string(code.real_vertices[i]) + ",\"support\":" + id_array(code.x_stabilizers[i]) + "}");
  write_rows(os, "x_stabilizers", rows, false);
  rows.clear();
  for (std::size_t i = 0; i < code.z_stabilizers.size(); ++i)
    rows.push_back("{\"edge\":" + std::to_string(code.stabilizer_edges[i]) + ",\"support\":" + id_array(code.z_stabilizers[i]) + "}");
  write_rows(os, "z_stabilizers", rows, false);
  os << "  \"logical_x_support\": " << id_array(code.logical_x_support()) << ",\n";
  os << "  \"logical_z_support\": " << id_array(code.logical_z_support()) << "\n";
  os << "}\n";
  return os.str();
}

std::vector<int> read_id_list(std::istream& in) {
  std::vector<int> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(b, e - b + 1);
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value < 0 || value > std::numeric_limits<int>::max())
      throw ContractError("line " + std::to_string(line_no) + ": expected a non-negative integer id, got '" + token + "'");
    ids.push_back(static_cast<int>(value));
  }
  return ids;
}

}  // namespace tetracode
