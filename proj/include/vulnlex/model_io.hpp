#pragma once

#include <cstdint>
#include <string>

namespace vulnlex {

// Envelope fields shared by every serialized model artifact. The JSON layout
// is {"kind", "version", "toolkit_version", "seed", "config_digest",
// "embedding_checksum", "vuln_class", "split", "max_len", "config",
// "parameters"}. Split fractions and seed make the train/test/validation
// partition reproducible from the artifact alone; max_len fixes the sequence
// window models were trained with.
struct ModelMeta {
    std::string kind;
    int version = 1;
    std::string toolkit_version;  // filled on save and load
    std::uint64_t seed = 0;
    std::string config_digest;
    std::string embedding_checksum;
    std::string vuln_class;
    double train_fraction = 0.7;
    double test_fraction = 0.15;
    double validation_fraction = 0.15;
    int max_len = 200;
};

// Reads just the envelope of a model file, whatever its kind.
ModelMeta read_model_meta(const std::string& path);

}  // namespace vulnlex
