#include "vulnlex/model_io.hpp"

#include "model_json.hpp"
#include "vulnlex/util.hpp"

namespace vulnlex {

namespace detail {

nlohmann::ordered_json model_envelope(const ModelMeta& meta, const std::string& kind) {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    j["version"] = kModelFormatVersion;
    j["toolkit_version"] = std::string(kToolkitVersion);
    j["seed"] = meta.seed;
    j["config_digest"] = meta.config_digest;
    j["embedding_checksum"] = meta.embedding_checksum;
    j["vuln_class"] = meta.vuln_class;
    j["split"] = {{"train", meta.train_fraction},
                  {"test", meta.test_fraction},
                  {"validation", meta.validation_fraction}};
    j["max_len"] = meta.max_len;
    return j;
}

namespace {

ModelMeta meta_from_json(const nlohmann::json& j) {
    ModelMeta meta;
    meta.kind = j.at("kind").get<std::string>();
    meta.version = j.at("version").get<int>();
    meta.toolkit_version = j.at("toolkit_version").get<std::string>();
    meta.seed = j.at("seed").get<std::uint64_t>();
    meta.config_digest = j.at("config_digest").get<std::string>();
    meta.embedding_checksum = j.at("embedding_checksum").get<std::string>();
    meta.vuln_class = j.at("vuln_class").get<std::string>();
    meta.train_fraction = j.at("split").at("train").get<double>();
    meta.test_fraction = j.at("split").at("test").get<double>();
    meta.validation_fraction = j.at("split").at("validation").get<double>();
    meta.max_len = j.at("max_len").get<int>();
    return meta;
}

}  // namespace

nlohmann::json load_model_json(const std::string& path, const std::string& expected_kind,
                               ModelMeta* meta) {
    nlohmann::json j;
    ModelMeta parsed;
    try {
        j = nlohmann::json::parse(read_file(path));
        parsed = meta_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error("model file " + path + ": " + e.what());
    }
    if (parsed.version != kModelFormatVersion) {
        throw Error("model file " + path + ": unsupported version " + std::to_string(parsed.version));
    }
    if (!expected_kind.empty() && parsed.kind != expected_kind) {
        throw Error("model file " + path + ": kind is '" + parsed.kind + "', expected '" +
                    expected_kind + "'");
    }
    if (meta) *meta = parsed;
    return j;
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["data"] = m.values();
    return j;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
    try {
        int rows = j.at("rows").get<int>();
        int cols = j.at("cols").get<int>();
        auto data = j.at("data").get<std::vector<double>>();
        if (rows < 0 || cols < 0 ||
            data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
            throw Error(what + ": inconsistent matrix shape");
        }
        return Matrix(rows, cols, std::move(data));
    } catch (const nlohmann::json::exception& e) {
        throw Error(what + ": " + e.what());
    }
}

}  // namespace detail

ModelMeta read_model_meta(const std::string& path) {
    ModelMeta meta;
    detail::load_model_json(path, "", &meta);
    return meta;
}

}  // namespace vulnlex
