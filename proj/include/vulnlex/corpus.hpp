#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vulnlex {

// The seven binary detection tasks. One dataset file and one model per class.
enum class VulnClass {
    SqlInjection,
    Xss,
    CommandInjection,
    Xsrf,
    RemoteCodeExecution,
    PathDisclosure,
    OpenRedirect,
};

inline constexpr int kVulnClassCount = 7;

std::string_view vuln_class_name(VulnClass c);
VulnClass parse_vuln_class(std::string_view name);  // throws on unknown names
const std::vector<VulnClass>& all_vuln_classes();

struct LabeledSample {
    std::string id;
    std::string code;
    int label = 0;  // 1 = vulnerable
    VulnClass vuln_class = VulnClass::SqlInjection;
    std::optional<std::string> origin;

    bool operator==(const LabeledSample&) const = default;
};

struct SplitSpec {
    double train_fraction = 0.7;
    double test_fraction = 0.15;
    double validation_fraction = 0.15;
    std::uint64_t seed = 0;

    void validate() const;  // fractions in (0,1), summing to 1 within 1e-9
};

struct DatasetSplit {
    std::vector<LabeledSample> train;
    std::vector<LabeledSample> test;
    std::vector<LabeledSample> validation;
};

// JSON Lines reader. Errors name the offending line; ids must be unique.
std::vector<LabeledSample> load_dataset(const std::string& path);
std::vector<LabeledSample> parse_dataset(std::string_view content, const std::string& origin_name);

// One record per line, LF endings; load(save(x)) == x.
std::string format_dataset(const std::vector<LabeledSample>& samples);
void save_dataset(const std::string& path, const std::vector<LabeledSample>& samples);

// Deterministic stratified split. Partition sizes depend only on the sample
// count and fractions; per-label counts in each partition stay within one of
// the exact fractional allocation. Single-label inputs fall back to a plain
// (unstratified) split.
DatasetSplit split(const std::vector<LabeledSample>& samples, const SplitSpec& spec);

}  // namespace vulnlex
