#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vulnlex/corpus.hpp"
#include "vulnlex/rng.hpp"
#include "vulnlex/util.hpp"

using namespace vulnlex;

namespace {

LabeledSample sample(const std::string& id, int label,
                     VulnClass cls = VulnClass::SqlInjection) {
    LabeledSample s;
    s.id = id;
    s.code = "x = " + id + "\n";
    s.label = label;
    s.vuln_class = cls;
    return s;
}

std::vector<LabeledSample> make_corpus(int n, double positive_rate, Rng& rng) {
    std::vector<LabeledSample> v;
    for (int i = 0; i < n; ++i) {
        v.push_back(sample("s" + std::to_string(i), rng.next_double() < positive_rate ? 1 : 0));
    }
    return v;
}

std::multiset<std::string> ids(const std::vector<LabeledSample>& v) {
    std::multiset<std::string> out;
    for (const auto& s : v) out.insert(s.id);
    return out;
}

}  // namespace

TEST_CASE("class names round-trip and unknown names fail") {
    for (VulnClass c : all_vuln_classes()) {
        CHECK(parse_vuln_class(vuln_class_name(c)) == c);
    }
    CHECK(all_vuln_classes().size() == kVulnClassCount);
    CHECK_THROWS_AS(parse_vuln_class("sql-injection"), Error);
    CHECK_THROWS_AS(parse_vuln_class(""), Error);
}

TEST_CASE("format/parse round-trips samples exactly") {
    std::vector<LabeledSample> in;
    in.push_back(sample("a", 1, VulnClass::Xss));
    in.push_back(sample("b", 0, VulnClass::OpenRedirect));
    in.back().origin = "synthetic";
    in.push_back(sample("c", 1, VulnClass::PathDisclosure));
    in.back().code = "def f():\n    return \"quoted \\\" text\"\n";

    std::vector<LabeledSample> out = parse_dataset(format_dataset(in), "mem");
    CHECK(out == in);
}

TEST_CASE("parse errors name the offending line") {
    std::string good = R"({"id":"a","code":"x\n","label":0,"vuln_class":"xss"})";
    std::string bad_label = R"({"id":"b","code":"y\n","label":2,"vuln_class":"xss"})";
    std::string content = good + "\n" + good + "\n";
    content.replace(content.find("\"a\""), 3, "\"z\"");  // keep ids unique

    SUBCASE("label outside {0,1} on line 5") {
        std::string five;
        for (int i = 0; i < 4; ++i) {
            std::string line = good;
            line.replace(line.find("\"a\""), 3, "\"id" + std::to_string(i) + "\"");
            five += line + "\n";
        }
        five += bad_label + "\n";
        CHECK_THROWS_WITH_AS(parse_dataset(five, "f"), doctest::Contains("line 5"), Error);
    }
    SUBCASE("malformed JSON") {
        CHECK_THROWS_WITH_AS(parse_dataset("{not json\n", "f"), doctest::Contains("line 1"), Error);
    }
    SUBCASE("duplicate id") {
        CHECK_THROWS_WITH_AS(parse_dataset(good + "\n" + good + "\n", "f"),
                             doctest::Contains("duplicate id"), Error);
    }
    SUBCASE("unknown vuln_class") {
        std::string bad = R"({"id":"a","code":"x\n","label":0,"vuln_class":"heap_spray"})";
        CHECK_THROWS_WITH_AS(parse_dataset(bad + "\n", "f"), doctest::Contains("heap_spray"), Error);
    }
    SUBCASE("missing field") {
        CHECK_THROWS_AS(parse_dataset(R"({"id":"a","label":0,"vuln_class":"xss"})" "\n", "f"),
                        Error);
    }
}

TEST_CASE("split sizes follow round(f*n) with validation taking the remainder") {
    Rng rng(1, 0);
    for (int n : {10, 23, 57, 100, 144, 999}) {
        std::vector<LabeledSample> corpus = make_corpus(n, 0.4, rng);
        SplitSpec spec;
        spec.seed = 7;
        DatasetSplit parts = split(corpus, spec);
        long long want_train = std::llround(0.7 * n);
        long long want_test = std::llround(0.15 * n);
        CHECK(static_cast<long long>(parts.train.size()) == want_train);
        CHECK(static_cast<long long>(parts.test.size()) == want_test);
        CHECK(parts.train.size() + parts.test.size() + parts.validation.size() ==
              static_cast<std::size_t>(n));
    }
}

TEST_CASE("split partitions the input exactly") {
    Rng rng(2, 0);
    std::vector<LabeledSample> corpus = make_corpus(83, 0.3, rng);
    SplitSpec spec;
    spec.seed = 11;
    DatasetSplit parts = split(corpus, spec);

    std::multiset<std::string> all = ids(parts.train);
    for (const auto& id : ids(parts.test)) all.insert(id);
    for (const auto& id : ids(parts.validation)) all.insert(id);
    CHECK(all == ids(corpus));
}

TEST_CASE("split is stratified: per-label counts within 1 of the exact allocation") {
    Rng rng(3, 0);
    for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
        for (double rate : {0.1, 0.5, 0.8}) {
            std::vector<LabeledSample> corpus = make_corpus(200, rate, rng);
            std::map<int, int> totals;
            for (const auto& s : corpus) ++totals[s.label];

            SplitSpec spec;
            spec.seed = seed;
            DatasetSplit parts = split(corpus, spec);
            auto check_partition = [&](const std::vector<LabeledSample>& part, double fraction) {
                std::map<int, int> counts;
                for (const auto& s : part) ++counts[s.label];
                for (const auto& [label, total] : totals) {
                    CHECK(std::abs(counts[label] - fraction * total) <= 1.0 + 1e-9);
                }
            };
            check_partition(parts.train, spec.train_fraction);
            check_partition(parts.test, spec.test_fraction);
            check_partition(parts.validation, spec.validation_fraction);
        }
    }
}

TEST_CASE("split is deterministic in the seed") {
    Rng rng(4, 0);
    std::vector<LabeledSample> corpus = make_corpus(60, 0.5, rng);
    SplitSpec spec;
    spec.seed = 5;
    DatasetSplit a = split(corpus, spec);
    DatasetSplit b = split(corpus, spec);
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
    CHECK(a.validation == b.validation);

    spec.seed = 6;
    DatasetSplit c = split(corpus, spec);
    CHECK(a.train != c.train);
}

TEST_CASE("split input validation") {
    SplitSpec spec;
    CHECK_THROWS_AS(split({}, spec), Error);

    Rng rng(5, 0);
    std::vector<LabeledSample> corpus = make_corpus(10, 0.5, rng);
    SplitSpec bad;
    bad.train_fraction = 0.7;
    bad.test_fraction = 0.2;
    bad.validation_fraction = 0.2;
    CHECK_THROWS_AS(split(corpus, bad), Error);

    SplitSpec zero;
    zero.train_fraction = 1.0;
    zero.test_fraction = 0.0;
    zero.validation_fraction = 0.0;
    CHECK_THROWS_AS(split(corpus, zero), Error);
}

TEST_CASE("single-label corpora still split with exact sizes") {
    Rng rng(6, 0);
    std::vector<LabeledSample> corpus = make_corpus(40, 0.0, rng);
    SplitSpec spec;
    spec.seed = 9;
    DatasetSplit parts = split(corpus, spec);
    CHECK(parts.train.size() == 28);
    CHECK(parts.test.size() == 6);
    CHECK(parts.validation.size() == 6);
}
