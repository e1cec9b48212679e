#include "crysrig/framework_io.hpp"

#include "crysrig/symmetry.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace crysrig {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path, what);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "syntax error at line " << line << ", column " << col;
    throw ParseError("", os.str());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

Vec vector_of(const json& j, int d, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of " + std::to_string(d) + " numbers");
  if (static_cast<int>(j.size()) != d) {
    fail(path, "expected length " + std::to_string(d) + ", got " + std::to_string(j.size()));
  }
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = number(j[i], index(path, i));
  return v;
}

CellIndex cell_of(const json& j, int d, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    fail(path, "expected an array of " + std::to_string(d) + " integers");
  }
  CellIndex k(d);
  for (int i = 0; i < d; ++i) k[i] = integer(j[i], index(path, i));
  return k;
}

Mat matrix_of(const json& j, int d, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    fail(path, "expected " + std::to_string(d) + " rows");
  }
  Mat m(d, d);
  for (int i = 0; i < d; ++i) m.row(i) = vector_of(j[i], d, index(path, i)).transpose();
  return m;
}

std::string id_of(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(path, "expected a string or integer id");
}

ordered_json to_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json to_json(const CellIndex& k) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < k.size(); ++i) a.push_back(k[i]);
  return a;
}

ordered_json rows_json(const Mat& m) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Vec(m.row(i).transpose())));
  return a;
}

}  // namespace

CrystalFramework parse_framework(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) fail("", "top level must be an object");

  if (doc.contains("format") && integer(doc["format"], "format") != kFormatVersion) {
    fail("format", "unsupported format version");
  }
  const int d = integer(field(doc, "dimension", ""), "dimension");
  if (d < 2) fail("dimension", "must be at least 2");

  CrystalFramework fw;
  if (doc.contains("tolerance")) {
    fw.tolerance = number(doc["tolerance"], "tolerance");
    if (!(fw.tolerance > 0.0)) fail("tolerance", "must be positive");
  }

  const json& periods = field(doc, "period_vectors", "");
  if (!periods.is_array() || static_cast<int>(periods.size()) != d) {
    fail("period_vectors", "expected " + std::to_string(d) + " vectors");
  }
  fw.lattice.Z.resize(d, d);
  for (int i = 0; i < d; ++i) fw.lattice.Z.col(i) = vector_of(periods[i], d, index("period_vectors", i));

  const json& verts = field(doc, "vertices", "");
  if (!verts.is_array()) fail("vertices", "expected an array");
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string path = index("vertices", i);
    const std::string id = id_of(field(verts[i], "id", path), join(path, "id"));
    if (!ids.emplace(id, static_cast<int>(i)).second) fail(join(path, "id"), "duplicate id '" + id + "'");
    Vec pos = vector_of(field(verts[i], "position", path), d, join(path, "position"));
    if (verts[i].contains("frac")) {
      if (!verts[i]["frac"].is_boolean()) fail(join(path, "frac"), "expected a boolean");
      if (verts[i]["frac"].get<bool>()) pos = fw.lattice.Z * pos;
    }
    fw.vertices.push_back({pos, id});
  }

  const json& edges = field(doc, "edges", "");
  if (!edges.is_array()) fail("edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = index("edges", i);
    auto endpoint = [&](const char* key) {
      const std::string p = join(path, key);
      const json& end = field(edges[i], key, path);
      const std::string id = id_of(field(end, "v", p), join(p, "v"));
      const auto it = ids.find(id);
      if (it == ids.end()) fail(join(p, "v"), "unknown vertex id '" + id + "'");
      CellIndex cell = CellIndex::Zero(d);
      if (end.contains("cell")) cell = cell_of(end["cell"], d, join(p, "cell"));
      return VertexRef{it->second, cell};
    };
    fw.edges.push_back({endpoint("from"), endpoint("to")});
  }

  if (doc.contains("symmetries")) {
    const json& syms = doc["symmetries"];
    if (!syms.is_array()) fail("symmetries", "expected an array");
    for (std::size_t i = 0; i < syms.size(); ++i) {
      const std::string path = index("symmetries", i);
      SymmetryDecl s;
      const json& nm = field(syms[i], "name", path);
      if (!nm.is_string()) fail(join(path, "name"), "expected a string");
      s.name = nm.get<std::string>();
      s.linear = matrix_of(field(syms[i], "linear", path), d, join(path, "linear"));
      s.translation = syms[i].contains("translation")
                          ? vector_of(syms[i]["translation"], d, join(path, "translation"))
                          : Vec::Zero(d);
      fw.symmetries.push_back(std::move(s));
    }
  }

  require_valid(fw);
  resolve_declared(fw);
  return fw;
}

std::string serialize_framework(const CrystalFramework& fw) {
  const int d = fw.dim();
  std::vector<std::string> ids;
  std::set<std::string> used;
  for (int v = 0; v < fw.num_vertices(); ++v) {
    std::string id = fw.vertices[v].name;
    if (id.empty() || used.count(id)) id = "v" + std::to_string(v);
    while (used.count(id)) id += "_";
    used.insert(id);
    ids.push_back(id);
  }

  ordered_json doc;
  doc["format"] = kFormatVersion;
  doc["dimension"] = d;
  ordered_json periods = ordered_json::array();
  for (int i = 0; i < d; ++i) periods.push_back(to_json(fw.lattice.period(i)));
  doc["period_vectors"] = periods;
  ordered_json verts = ordered_json::array();
  for (int v = 0; v < fw.num_vertices(); ++v) {
    verts.push_back({{"id", ids[v]}, {"position", to_json(fw.vertices[v].position)}});
  }
  doc["vertices"] = verts;
  ordered_json edges = ordered_json::array();
  for (const MotifEdge& e : fw.edges) {
    edges.push_back({{"from", {{"v", ids[e.from.vertex]}, {"cell", to_json(e.from.cell)}}},
                     {"to", {{"v", ids[e.to.vertex]}, {"cell", to_json(e.to.cell)}}}});
  }
  doc["edges"] = edges;
  if (!fw.symmetries.empty()) {
    ordered_json syms = ordered_json::array();
    for (const SymmetryDecl& s : fw.symmetries) {
      syms.push_back({{"name", s.name},
                      {"linear", rows_json(s.linear)},
                      {"translation", to_json(s.translation)}});
    }
    doc["symmetries"] = syms;
  }
  doc["tolerance"] = fw.tolerance;
  return doc.dump(2) + "\n";
}

MatrixSpace parse_matrix_space(const std::string& text, int d, double tol) {
  const json doc = parse_text(text);
  const json* list = &doc;
  std::string path;
  if (doc.is_object()) {
    list = &field(doc, "matrices", "");
    path = "matrices";
  }
  if (!list->is_array()) fail(path, "expected an array of matrices");
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < list->size(); ++i) {
    basis.push_back(matrix_of((*list)[i], d, index(path, i)));
  }
  return MatrixSpace::custom(d, std::move(basis), "custom", tol);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace crysrig
