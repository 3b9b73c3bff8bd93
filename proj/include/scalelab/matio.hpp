#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "scalelab/types.hpp"

namespace scalelab {

using Json = nlohmann::json;

// Rejects any key of `obj` not listed in `allowed`; `path` names the object
// in the error message so a config author can find the offending line.
void validate_keys(const Json& obj, const std::vector<std::string>& allowed,
                   const std::string& path);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

// Complex matrix document: {"dim": n, "entries": [[re, im], ...]} row-major,
// exactly n*n entry pairs.
Matrix parse_complex_matrix(const Json& doc, const std::string& path);
Json complex_matrix_doc(const Matrix& m);

// Real matrix document: {"dim": n, "entries": [x, ...]} row-major.
RealMatrix parse_real_matrix(const Json& doc, const std::string& path);

double require_number(const Json& obj, const std::string& key, const std::string& path);
int require_int(const Json& obj, const std::string& key, const std::string& path);
std::string require_string(const Json& obj, const std::string& key, const std::string& path);

}  // namespace scalelab
