#include "vulnlex/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "vulnlex/util.hpp"

namespace vulnlex {

ConfusionCounts confusion(const std::vector<double>& scores, const std::vector<int>& labels,
                          double threshold) {
    if (scores.size() != labels.size()) throw Error("confusion: scores/labels length mismatch");
    if (scores.empty()) throw Error("confusion: empty input");
    ConfusionCounts c;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        bool pred = scores[i] >= threshold;
        if (labels[i] == 1) {
            pred ? ++c.tp : ++c.fn;
        } else {
            pred ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

Metrics metrics(const ConfusionCounts& c) {
    if (c.total() <= 0) throw Error("metrics: empty confusion counts");
    Metrics m;
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    if (c.tp + c.fp > 0) {
        m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    } else {
        m.precision_defined = false;
    }
    if (c.tp + c.fn > 0) {
        m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    } else {
        m.recall_defined = false;
    }
    if (m.precision + m.recall > 0.0) {
        m.f_score = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    } else {
        m.f_score = 0.0;
        m.f_score_defined = false;
    }
    return m;
}

RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw Error("roc: scores/labels length mismatch");
    long long pos = std::count(labels.begin(), labels.end(), 1);
    long long neg = static_cast<long long>(labels.size()) - pos;
    if (pos == 0 || neg == 0) throw Error("roc: needs at least one positive and one negative label");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    long long tp = 0, fp = 0;
    double auc = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        double s = scores[order[i]];
        long long dtp = 0, dfp = 0;
        while (i < order.size() && scores[order[i]] == s) {
            labels[order[i]] == 1 ? ++dtp : ++dfp;
            ++i;
        }
        double fpr0 = static_cast<double>(fp) / neg;
        double tpr0 = static_cast<double>(tp) / pos;
        tp += dtp;
        fp += dfp;
        double fpr1 = static_cast<double>(fp) / neg;
        double tpr1 = static_cast<double>(tp) / pos;
        auc += (fpr1 - fpr0) * (tpr0 + tpr1) / 2.0;
        curve.points.emplace_back(fpr1, tpr1);
    }
    curve.auc = auc;
    return curve;
}

std::string roc_to_csv(const RocCurve& curve) {
    std::string out = "fpr,tpr\n";
    char buf[64];
    for (const auto& [fpr, tpr] : curve.points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", fpr, tpr);
        out += buf;
    }
    return out;
}

MacroAverages aggregate(const std::vector<EvaluationReport>& reports) {
    if (reports.empty()) throw Error("aggregate: no reports");
    MacroAverages a;
    for (const EvaluationReport& r : reports) {
        a.accuracy += r.scalar_metrics.accuracy;
        a.precision += r.scalar_metrics.precision;
        a.recall += r.scalar_metrics.recall;
        a.f_score += r.scalar_metrics.f_score;
        a.auc += r.auc;
    }
    double n = static_cast<double>(reports.size());
    a.accuracy /= n;
    a.precision /= n;
    a.recall /= n;
    a.f_score /= n;
    a.auc /= n;
    return a;
}

std::string report_to_text(const EvaluationReport& r) {
    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%-12s %s\n", "class", std::string(vuln_class_name(r.vuln_class)).c_str());
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-12s %s\n", "model", r.model_kind.c_str());
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-12s %s\n", "partition", r.partition.c_str());
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-12s tp=%lld fp=%lld tn=%lld fn=%lld\n", "confusion",
                  r.confusion.tp, r.confusion.fp, r.confusion.tn, r.confusion.fn);
    out += buf;
    const Metrics& m = r.scalar_metrics;
    auto metric_line = [&](const char* name, double v, bool defined) {
        std::snprintf(buf, sizeof(buf), "%-12s %.4f%s\n", name, v, defined ? "" : " (undefined, reported as 0)");
        out += buf;
    };
    metric_line("accuracy", m.accuracy, true);
    metric_line("precision", m.precision, m.precision_defined);
    metric_line("recall", m.recall, m.recall_defined);
    metric_line("f_score", m.f_score, m.f_score_defined);
    metric_line("auc", r.auc, true);
    return out;
}

}  // namespace vulnlex
