#pragma once

#include <string>

#include "json.hpp"
#include "vulnlex/matrix.hpp"
#include "vulnlex/model_io.hpp"

namespace vulnlex::detail {

inline constexpr int kModelFormatVersion = 1;

nlohmann::ordered_json model_envelope(const ModelMeta& meta, const std::string& kind);

// Parses a model file, checks kind and version, and fills *meta if given.
nlohmann::json load_model_json(const std::string& path, const std::string& expected_kind,
                               ModelMeta* meta);

nlohmann::ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& what);

}  // namespace vulnlex::detail
