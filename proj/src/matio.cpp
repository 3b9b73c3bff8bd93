#include "scalelab/matio.hpp"

#include <fstream>

namespace scalelab {

void validate_keys(const Json& obj, const std::vector<std::string>& allowed,
                   const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const std::string& key : allowed)
      if (it.key() == key) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError("unknown key \"" + it.key() + "\" in " + path);
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
  return doc;
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

Matrix parse_complex_matrix(const Json& doc, const std::string& path) {
  validate_keys(doc, {"dim", "entries"}, path);
  int n = require_int(doc, "dim", path);
  if (n < 1) throw ConfigError(path + ".dim must be positive");
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw ConfigError(path + ".entries must be an array");
  const Json& entries = doc["entries"];
  if (static_cast<int>(entries.size()) != n * n)
    throw ConfigError(path + ".entries must hold exactly dim*dim pairs");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Json& e = entries[static_cast<std::size_t>(i * n + j)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ConfigError(path + ".entries elements must be [re, im] number pairs");
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

Json complex_matrix_doc(const Matrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return Json{{"dim", m.rows()}, {"entries", entries}};
}

RealMatrix parse_real_matrix(const Json& doc, const std::string& path) {
  validate_keys(doc, {"dim", "entries"}, path);
  int n = require_int(doc, "dim", path);
  if (n < 1) throw ConfigError(path + ".dim must be positive");
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw ConfigError(path + ".entries must be an array");
  const Json& entries = doc["entries"];
  if (static_cast<int>(entries.size()) != n * n)
    throw ConfigError(path + ".entries must hold exactly dim*dim numbers");
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Json& e = entries[static_cast<std::size_t>(i * n + j)];
      if (!e.is_number()) throw ConfigError(path + ".entries elements must be numbers");
      m(i, j) = e.get<double>();
    }
  return m;
}

double require_number(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError("missing key \"" + key + "\" in " + path);
  if (!obj[key].is_number()) throw ConfigError(path + "." + key + " must be a number");
  return obj[key].get<double>();
}

int require_int(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError("missing key \"" + key + "\" in " + path);
  if (!obj[key].is_number_integer()) throw ConfigError(path + "." + key + " must be an integer");
  return obj[key].get<int>();
}

std::string require_string(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError("missing key \"" + key + "\" in " + path);
  if (!obj[key].is_string()) throw ConfigError(path + "." + key + " must be a string");
  return obj[key].get<std::string>();
}

}  // namespace scalelab
