#include "vulnlex/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "vulnlex/rng.hpp"
#include "vulnlex/util.hpp"

namespace vulnlex {

namespace {

struct ClassName {
    VulnClass value;
    std::string_view name;
};

constexpr ClassName kClassNames[] = {
    {VulnClass::SqlInjection, "sql_injection"},
    {VulnClass::Xss, "xss"},
    {VulnClass::CommandInjection, "command_injection"},
    {VulnClass::Xsrf, "xsrf"},
    {VulnClass::RemoteCodeExecution, "remote_code_execution"},
    {VulnClass::PathDisclosure, "path_disclosure"},
    {VulnClass::OpenRedirect, "open_redirect"},
};

}  // namespace

std::string_view vuln_class_name(VulnClass c) {
    for (const auto& e : kClassNames)
        if (e.value == c) return e.name;
    throw Error("invalid VulnClass value");
}

VulnClass parse_vuln_class(std::string_view name) {
    for (const auto& e : kClassNames)
        if (e.name == name) return e.value;
    throw Error("unknown vuln_class: " + std::string(name));
}

const std::vector<VulnClass>& all_vuln_classes() {
    static const std::vector<VulnClass> all = [] {
        std::vector<VulnClass> v;
        for (const auto& e : kClassNames) v.push_back(e.value);
        return v;
    }();
    return all;
}

void SplitSpec::validate() const {
    auto in_unit = [](double f) { return f > 0.0 && f < 1.0; };
    if (!in_unit(train_fraction) || !in_unit(test_fraction) || !in_unit(validation_fraction))
        throw Error("split fractions must lie in (0,1)");
    double sum = train_fraction + test_fraction + validation_fraction;
    if (std::abs(sum - 1.0) > 1e-9) throw Error("split fractions must sum to 1");
}

std::vector<LabeledSample> parse_dataset(std::string_view content, const std::string& origin_name) {
    std::vector<LabeledSample> samples;
    std::unordered_set<std::string> seen_ids;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t nl = content.find('\n', pos);
        std::string_view line = content.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        bool last = nl == std::string_view::npos;
        pos = last ? content.size() + 1 : nl + 1;
        ++line_no;
        if (line.empty()) {
            if (last) break;  // trailing newline
            throw Error(origin_name + ": malformed line " + std::to_string(line_no) + ": empty line");
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw Error(origin_name + ": malformed line " + std::to_string(line_no) + ": " + e.what());
        }
        auto fail = [&](const std::string& why) -> Error {
            return Error(origin_name + ": line " + std::to_string(line_no) + ": " + why);
        };
        if (!j.is_object()) throw fail("record is not a JSON object");
        if (!j.contains("id") || !j["id"].is_string()) throw fail("missing string field 'id'");
        if (!j.contains("code") || !j["code"].is_string()) throw fail("missing string field 'code'");
        if (!j.contains("label") || !j["label"].is_number_integer()) throw fail("missing integer field 'label'");
        if (!j.contains("vuln_class") || !j["vuln_class"].is_string())
            throw fail("missing string field 'vuln_class'");

        LabeledSample s;
        s.id = j["id"].get<std::string>();
        s.code = j["code"].get<std::string>();
        long long label = j["label"].get<long long>();
        if (label != 0 && label != 1) throw fail("label outside {0,1}");
        s.label = static_cast<int>(label);
        if (s.code.empty()) throw fail("code must be non-empty");
        try {
            s.vuln_class = parse_vuln_class(j["vuln_class"].get<std::string>());
        } catch (const Error& e) {
            throw fail(e.what());
        }
        if (j.contains("origin")) {
            if (!j["origin"].is_string()) throw fail("'origin' must be a string");
            s.origin = j["origin"].get<std::string>();
        }
        if (!seen_ids.insert(s.id).second) throw fail("duplicate id '" + s.id + "'");
        samples.push_back(std::move(s));
        if (last) break;
    }
    return samples;
}

std::vector<LabeledSample> load_dataset(const std::string& path) {
    return parse_dataset(read_file(path), path);
}

std::string format_dataset(const std::vector<LabeledSample>& samples) {
    std::string out;
    for (const LabeledSample& s : samples) {
        nlohmann::ordered_json j;
        j["id"] = s.id;
        j["code"] = s.code;
        j["label"] = s.label;
        j["vuln_class"] = std::string(vuln_class_name(s.vuln_class));
        if (s.origin) j["origin"] = *s.origin;
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

void save_dataset(const std::string& path, const std::vector<LabeledSample>& samples) {
    write_file(path, format_dataset(samples));
}

namespace {

// round-half-away-from-zero of non-negative reals
long long round_count(double x) { return static_cast<long long>(std::floor(x + 0.5)); }

struct Stratum {
    std::vector<std::size_t> indices;  // into the input sample list, shuffled
    double size = 0.0;
};

}  // namespace

DatasetSplit split(const std::vector<LabeledSample>& samples, const SplitSpec& spec) {
    spec.validate();
    if (samples.empty()) throw Error("split: empty input");

    const long long n = static_cast<long long>(samples.size());
    // Global partition sizes come from the total count alone, so they never
    // change with the seed or the label mix.
    long long n_train = round_count(spec.train_fraction * n);
    long long n_test = round_count(spec.test_fraction * n);
    long long n_val = n - n_train - n_test;
    while (n_val < 0) {
        if (n_test > 0)
            --n_test;
        else
            --n_train;
        ++n_val;
    }

    Stratum strata[2];
    for (std::size_t i = 0; i < samples.size(); ++i) strata[samples[i].label].indices.push_back(i);
    for (int l = 0; l < 2; ++l) {
        Rng rng(spec.seed, static_cast<std::uint64_t>(l) + 1);
        rng.shuffle(strata[l].indices);
        strata[l].size = static_cast<double>(strata[l].indices.size());
    }

    long long t[2] = {0, 0};
    long long s[2] = {0, 0};
    const long long n0 = static_cast<long long>(strata[0].indices.size());
    const long long n1 = static_cast<long long>(strata[1].indices.size());

    if (n0 == 0 || n1 == 0) {
        int l = n0 == 0 ? 1 : 0;
        t[l] = n_train;
        s[l] = n_test;
    } else {
        // Train counts per label: floor of the exact allocation, then the
        // remainder goes to the stratum with the larger fractional part.
        double q[2] = {spec.train_fraction * n0, spec.train_fraction * n1};
        t[0] = static_cast<long long>(std::floor(q[0]));
        t[1] = static_cast<long long>(std::floor(q[1]));
        long long deficit = n_train - t[0] - t[1];  // 0, 1 or 2
        int order[2] = {q[0] - std::floor(q[0]) >= q[1] - std::floor(q[1]) ? 0 : 1, 0};
        order[1] = 1 - order[0];
        for (int k = 0; k < 2 && deficit > 0; ++k) {
            int l = order[k];
            if (t[l] < (l == 0 ? n0 : n1)) {
                ++t[l];
                --deficit;
            }
        }
        while (deficit > 0) {  // tiny strata; give to whichever still has room
            for (int l = 0; l < 2 && deficit > 0; ++l) {
                if (t[l] < (l == 0 ? n0 : n1)) {
                    ++t[l];
                    --deficit;
                }
            }
        }

        // Test counts: enumerate the two-way split of n_test and keep the
        // choice closest to the exact per-label allocation (ties: smaller
        // share for label 0). Validation is the per-label remainder.
        double ideal_test[2] = {spec.test_fraction * n0, spec.test_fraction * n1};
        double ideal_val[2] = {spec.validation_fraction * n0, spec.validation_fraction * n1};
        long long m0 = n0 - t[0];
        long long m1 = n1 - t[1];
        long long best = -1;
        double best_cost = 0.0;
        for (long long s0 = 0; s0 <= m0; ++s0) {
            long long s1 = n_test - s0;
            if (s1 < 0 || s1 > m1) continue;
            double cost = std::max(
                {std::abs(s0 - ideal_test[0]), std::abs(s1 - ideal_test[1]),
                 std::abs((m0 - s0) - ideal_val[0]), std::abs((m1 - s1) - ideal_val[1])});
            if (best < 0 || cost < best_cost - 1e-12) {
                best = s0;
                best_cost = cost;
            }
        }
        s[0] = best < 0 ? std::min(n_test, m0) : best;
        s[1] = n_test - s[0];
    }

    DatasetSplit out;
    for (int l = 0; l < 2; ++l) {
        const auto& idx = strata[l].indices;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const LabeledSample& smp = samples[idx[k]];
            if (static_cast<long long>(k) < t[l])
                out.train.push_back(smp);
            else if (static_cast<long long>(k) < t[l] + s[l])
                out.test.push_back(smp);
            else
                out.validation.push_back(smp);
        }
    }
    return out;
}

}  // namespace vulnlex
