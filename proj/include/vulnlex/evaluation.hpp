#pragma once

#include <string>
#include <vector>

#include "vulnlex/corpus.hpp"

namespace vulnlex {

struct ConfusionCounts {
    long long tp = 0;
    long long fp = 0;
    long long tn = 0;
    long long fn = 0;

    long long total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

// Prediction rule is score >= threshold, boundary inclusive.
ConfusionCounts confusion(const std::vector<double>& scores, const std::vector<int>& labels,
                          double threshold);

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    // Zero-denominator metrics are reported as 0 with the flag cleared.
    bool precision_defined = true;
    bool recall_defined = true;
    bool f_score_defined = true;
};

Metrics metrics(const ConfusionCounts& counts);

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) .. (1,1)
    double auc = 0.0;
};

// Threshold sweep over descending unique scores, one step per unique score;
// AUC by the trapezoidal rule. Requires both classes present.
RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels);

std::string roc_to_csv(const RocCurve& curve);

struct EvaluationReport {
    VulnClass vuln_class = VulnClass::SqlInjection;
    std::string model_kind;
    std::string partition;  // "test" or "validation"
    ConfusionCounts confusion;
    Metrics scalar_metrics;
    double auc = 0.0;
};

struct MacroAverages {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    double auc = 0.0;
};

// Unweighted arithmetic mean per metric across reports.
MacroAverages aggregate(const std::vector<EvaluationReport>& reports);

// Aligned-column plain-text rendering of one report.
std::string report_to_text(const EvaluationReport& report);

}  // namespace vulnlex
