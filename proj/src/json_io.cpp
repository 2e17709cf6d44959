#include "qdisc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace qdisc {

namespace {

double toDouble(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

std::complex<double> pairToComplex(const json& v) {
  if (!v.is_array() || v.size() != 2) throw ParseError("complex entries must be [re, im] pairs");
  return {toDouble(v[0], "re"), toDouble(v[1], "im")};
}

Matrix matrixFromFlat(const json& flat, const char* what) {
  if (!flat.is_array()) throw ParseError(std::string(what) + " must be an array");
  const auto len = flat.size();
  const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(len))));
  if (dim < 1 || static_cast<size_t>(dim) * static_cast<size_t>(dim) != len) {
    throw ParseError(std::string(what) + " must hold a square number of entries");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = pairToComplex(flat[static_cast<size_t>(i * dim + j)]);
    }
  }
  return m;
}

json matrixToFlat(const Matrix& m) {
  json flat = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      flat.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return flat;
}

}  // namespace

Matrix matrixFromJson(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const int dim = static_cast<int>(rows.size());
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError("matrix rows must all have length dim");
    }
    for (int j = 0; j < dim; ++j) {
      m(i, j) = pairToComplex(row[static_cast<size_t>(j)]);
    }
  }
  return m;
}

json matrixToJson(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

WeightedEnsemble ensembleFromJson(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("states")) {
    throw ParseError("ensemble document needs \"dim\" and \"states\"");
  }
  if (!doc["dim"].is_number_integer()) throw ParseError("\"dim\" must be an integer");
  const int dim = doc["dim"].get<int>();
  if (dim < 1 || dim > kMaxDim) throw ParseError("unsupported dimension");
  const json& states = doc["states"];
  if (!states.is_array() || states.empty()) throw ParseError("\"states\" must be a non-empty array");

  WeightedEnsemble out;
  for (const json& s : states) {
    if (!s.is_object() || !s.contains("p")) throw ParseError("each state needs a prior \"p\"");
    WeightedState ws;
    ws.p = toDouble(s["p"], "p");
    if (s.contains("matrix")) {
      ws.rho = matrixFromJson(s["matrix"]);
      if (ws.rho.rows() != dim) throw ParseError("state matrix does not match \"dim\"");
    } else if (s.contains("bloch")) {
      if (dim != 2) throw ParseError("\"bloch\" states are only valid for dim 2");
      const json& v = s["bloch"];
      if (!v.is_array() || v.size() != 3) throw ParseError("\"bloch\" must be [x, y, z]");
      const Eigen::Vector3d bv(toDouble(v[0], "bloch"), toDouble(v[1], "bloch"),
                               toDouble(v[2], "bloch"));
      if (bv.norm() > 1.0 + 1e-9) throw ParseError("bloch vector must satisfy |v| <= 1");
      ws.rho = fromBloch(BlochOperator{0.5, 0.5 * bv});
    } else {
      throw ParseError("each state needs \"matrix\" or \"bloch\"");
    }
    out.states.push_back(std::move(ws));
  }
  return out;
}

json ensembleToJson(const WeightedEnsemble& e) {
  json doc;
  doc["dim"] = e.dim();
  json states = json::array();
  for (const WeightedState& ws : e.states) {
    states.push_back({{"p", ws.p}, {"matrix", matrixToJson(ws.rho)}});
  }
  doc["states"] = std::move(states);
  return doc;
}

Povm povmFromJson(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("elements")) {
    throw ParseError("povm document needs \"dim\" and \"elements\"");
  }
  if (!doc["dim"].is_number_integer()) throw ParseError("\"dim\" must be an integer");
  const int dim = doc["dim"].get<int>();
  if (dim < 1 || dim > kMaxDim) throw ParseError("unsupported dimension");
  const json& elems = doc["elements"];
  if (!elems.is_array() || elems.empty()) throw ParseError("\"elements\" must be a non-empty array");

  Povm out;
  for (const json& el : elems) {
    Matrix m = matrixFromJson(el);
    if (m.rows() != dim) throw ParseError("povm element does not match \"dim\"");
    out.elements.push_back(std::move(m));
  }
  return out;
}

json povmToJson(const Povm& p) {
  json doc;
  doc["dim"] = p.dim();
  json elems = json::array();
  for (const Matrix& el : p.elements) elems.push_back(matrixToJson(el));
  doc["elements"] = std::move(elems);
  return doc;
}

NestedPovm nestedPovmFromJson(const json& doc) {
  if (!doc.is_object() || !doc.contains("depth") || !doc.contains("nodes")) {
    throw ParseError("nested povm document needs \"depth\" and \"nodes\"");
  }
  if (!doc["depth"].is_number_integer()) throw ParseError("\"depth\" must be an integer");
  NestedPovm out;
  out.depth = doc["depth"].get<int>();
  if (out.depth < 1 || out.depth > 8) throw ParseError("unsupported depth");
  const json& nodes = doc["nodes"];
  if (!nodes.is_array() || nodes.empty()) throw ParseError("\"nodes\" must be a non-empty array");

  for (const json& node : nodes) {
    if (!node.is_object() || !node.contains("path") || !node.contains("b0") ||
        !node.contains("b1")) {
      throw ParseError("each node needs \"path\", \"b0\" and \"b1\"");
    }
    if (!node["path"].is_string()) throw ParseError("node \"path\" must be a string");
    const std::string path = node["path"].get<std::string>();
    if (static_cast<int>(path.size()) >= out.depth) {
      throw ParseError("node path longer than depth allows");
    }
    for (char ch : path) {
      if (ch != '0' && ch != '1') throw ParseError("node paths are bit strings");
    }
    if (out.nodes.count(path)) throw ParseError("duplicate node path \"" + path + "\"");
    Matrix b0 = matrixFromFlat(node["b0"], "b0");
    Matrix b1 = matrixFromFlat(node["b1"], "b1");
    if (b0.rows() != b1.rows()) throw ParseError("node matrices disagree in dimension");
    if (out.dim == 0) {
      out.dim = static_cast<int>(b0.rows());
    } else if (b0.rows() != out.dim) {
      throw ParseError("node matrices disagree in dimension");
    }
    out.nodes[path] = {std::move(b0), std::move(b1)};
  }
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() != out.dim) {
      throw ParseError("\"dim\" does not match the node matrices");
    }
  }
  return out;
}

json nestedPovmToJson(const NestedPovm& n) {
  json doc;
  doc["depth"] = n.depth;
  doc["dim"] = n.dim;
  json nodes = json::array();
  for (const auto& [path, pair] : n.nodes) {
    nodes.push_back(
        {{"path", path}, {"b0", matrixToFlat(pair.first)}, {"b1", matrixToFlat(pair.second)}});
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    throw ParseError(path + ": " + err.what());
  }
  return doc;
}

void writeJsonFile(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path);
}

WeightedEnsemble readEnsemble(const std::string& path) { return ensembleFromJson(readJsonFile(path)); }

Povm readPovm(const std::string& path) { return povmFromJson(readJsonFile(path)); }

NestedPovm readNestedPovm(const std::string& path) { return nestedPovmFromJson(readJsonFile(path)); }

}  // namespace qdisc
