#include "vulnlex/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "model_json.hpp"
#include "vulnlex/numerics.hpp"
#include "vulnlex/rng.hpp"
#include "vulnlex/util.hpp"

namespace vulnlex {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_training_inputs(const Matrix& features, const std::vector<int>& labels,
                           const std::string& op) {
    if (features.rows() < 1) throw Error(op + ": empty training set");
    if (features.cols() < 1) throw Error(op + ": zero-length features");
    if (labels.size() != static_cast<std::size_t>(features.rows())) {
        throw Error(op + ": label count does not match sample count");
    }
    for (int label : labels) {
        if (label != 0 && label != 1) throw Error(op + ": labels must be 0 or 1");
    }
}

void require_both_classes(const std::vector<int>& labels, const std::string& op) {
    bool has0 = false;
    bool has1 = false;
    for (int label : labels) (label == 0 ? has0 : has1) = true;
    if (!has0 || !has1) throw Error(op + ": training data must contain both classes");
}

void check_feature_length(std::size_t got, int want, const std::string& op) {
    if (got != static_cast<std::size_t>(want)) {
        throw Error(op + ": feature vector has length " + std::to_string(got) + ", expected " +
                    std::to_string(want));
    }
}

}  // namespace

GnbModel gnb_fit(const Matrix& features, const std::vector<int>& labels) {
    check_training_inputs(features, labels, "gnb_fit");
    require_both_classes(labels, "gnb_fit");
    int n = features.rows();
    int d = features.cols();

    GnbModel model;
    model.priors.assign(2, 0.0);
    model.means = Matrix(2, d);
    model.variances = Matrix(2, d);

    int counts[2] = {0, 0};
    for (int i = 0; i < n; ++i) {
        ++counts[labels[i]];
        for (int j = 0; j < d; ++j) model.means.at(labels[i], j) += features.at(i, j);
    }
    for (int c = 0; c < 2; ++c) {
        model.priors[c] = static_cast<double>(counts[c]) / n;
        for (int j = 0; j < d; ++j) model.means.at(c, j) /= counts[c];
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            double dev = features.at(i, j) - model.means.at(labels[i], j);
            model.variances.at(labels[i], j) += dev * dev;
        }
    }
    for (int c = 0; c < 2; ++c) {
        for (int j = 0; j < d; ++j) model.variances.at(c, j) /= counts[c];
    }

    // Smoothing scale comes from the overall (label-free) feature variances.
    double max_var = 0.0;
    for (int j = 0; j < d; ++j) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += features.at(i, j);
        mean /= n;
        double var = 0.0;
        for (int i = 0; i < n; ++i) {
            double dev = features.at(i, j) - mean;
            var += dev * dev;
        }
        max_var = std::max(max_var, var / n);
    }
    model.smoothing = 1e-9 * max_var;
    if (model.smoothing <= 0.0) model.smoothing = 1e-9;
    for (double& v : model.variances.values()) v += model.smoothing;
    return model;
}

double gnb_predict(const GnbModel& model, const std::vector<double>& x) {
    int d = model.means.cols();
    check_feature_length(x.size(), d, "gnb_predict");
    double log_post[2];
    for (int c = 0; c < 2; ++c) {
        double lp = std::log(model.priors[c]);
        for (int j = 0; j < d; ++j) {
            double var = model.variances.at(c, j);
            double dev = x[j] - model.means.at(c, j);
            lp += -0.5 * std::log(2.0 * kPi * var) - dev * dev / (2.0 * var);
        }
        log_post[c] = lp;
    }
    return sigmoid(log_post[1] - log_post[0]);
}

namespace {

double gini_from_counts(std::int64_t pos, std::int64_t total) {
    if (total == 0) return 0.0;
    double p = static_cast<double>(pos) / total;
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

int tree_build(TreeModel& model, const Matrix& features, const std::vector<int>& labels,
               std::vector<int>& idx, int depth) {
    int me = static_cast<int>(model.nodes.size());
    model.nodes.push_back(TreeNode{});

    std::int64_t n = static_cast<std::int64_t>(idx.size());
    std::int64_t pos = 0;
    for (int i : idx) pos += labels[i];
    model.nodes[me].positive_fraction = static_cast<double>(pos) / n;

    if (depth >= model.max_depth || n < 2 || pos == 0 || pos == n) return me;

    double parent = gini_from_counts(pos, n);
    double best = parent;
    int best_feature = -1;
    double best_threshold = 0.0;

    std::vector<int> sorted = idx;
    for (int f = 0; f < features.cols(); ++f) {
        std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
            if (features.at(a, f) != features.at(b, f)) return features.at(a, f) < features.at(b, f);
            return a < b;
        });
        std::int64_t left_pos = 0;
        for (std::int64_t k = 0; k < n - 1; ++k) {
            left_pos += labels[sorted[k]];
            double a = features.at(sorted[k], f);
            double b = features.at(sorted[k + 1], f);
            if (a == b) continue;
            double threshold = (a + b) / 2.0;
            if (!(threshold < b)) threshold = a;  // adjacent doubles can round up
            std::int64_t nl = k + 1;
            std::int64_t nr = n - nl;
            double weighted = (nl * gini_from_counts(left_pos, nl) +
                               nr * gini_from_counts(pos - left_pos, nr)) /
                              n;
            if (weighted < best) {
                best = weighted;
                best_feature = f;
                best_threshold = threshold;
            }
        }
    }
    if (best_feature < 0) return me;

    std::vector<int> left_idx;
    std::vector<int> right_idx;
    for (int i : idx) {
        (features.at(i, best_feature) <= best_threshold ? left_idx : right_idx).push_back(i);
    }
    model.nodes[me].feature = best_feature;
    model.nodes[me].threshold = best_threshold;
    int left = tree_build(model, features, labels, left_idx, depth + 1);
    int right = tree_build(model, features, labels, right_idx, depth + 1);
    model.nodes[me].left = left;
    model.nodes[me].right = right;
    return me;
}

}  // namespace

TreeModel tree_fit(const Matrix& features, const std::vector<int>& labels, int max_depth) {
    check_training_inputs(features, labels, "tree_fit");
    if (max_depth < 0) throw Error("tree_fit: max_depth must be non-negative");
    TreeModel model;
    model.max_depth = max_depth;
    std::vector<int> idx(features.rows());
    std::iota(idx.begin(), idx.end(), 0);
    tree_build(model, features, labels, idx, 0);
    return model;
}

double tree_predict(const TreeModel& model, const std::vector<double>& x) {
    if (model.nodes.empty()) throw Error("tree_predict: empty model");
    int node = 0;
    while (model.nodes[node].feature >= 0) {
        const TreeNode& cur = model.nodes[node];
        if (static_cast<std::size_t>(cur.feature) >= x.size()) {
            throw Error("tree_predict: feature vector too short for split on feature " +
                        std::to_string(cur.feature));
        }
        node = x[cur.feature] <= cur.threshold ? cur.left : cur.right;
    }
    return model.nodes[node].positive_fraction;
}

namespace {

int tree_depth_from(const TreeModel& model, int node) {
    const TreeNode& cur = model.nodes[node];
    if (cur.feature < 0) return 0;
    return 1 + std::max(tree_depth_from(model, cur.left), tree_depth_from(model, cur.right));
}

}  // namespace

int tree_depth(const TreeModel& model) {
    if (model.nodes.empty()) return 0;
    return tree_depth_from(model, 0);
}

double logreg_loss(const std::vector<double>& weights, double bias, double regularization,
                   const Matrix& features, const std::vector<int>& labels) {
    int n = features.rows();
    int d = features.cols();
    check_feature_length(weights.size(), d, "logreg_loss");
    double loss = 0.0;
    for (int j = 0; j < d; ++j) loss += 0.5 * regularization * weights[j] * weights[j];
    for (int i = 0; i < n; ++i) {
        double z = bias;
        for (int j = 0; j < d; ++j) z += weights[j] * features.at(i, j);
        double y = labels[i] == 1 ? 1.0 : -1.0;
        loss += softplus(-y * z);
    }
    return loss;
}

namespace {

// Parameter layout for the quasi-Newton solver: weights then bias.
struct LogRegProblem {
    const Matrix& features;
    const std::vector<int>& labels;
    double regularization;

    double eval(const std::vector<double>& p, std::vector<double>& grad) const {
        int n = features.rows();
        int d = features.cols();
        grad.assign(d + 1, 0.0);
        double loss = 0.0;
        for (int j = 0; j < d; ++j) {
            loss += 0.5 * regularization * p[j] * p[j];
            grad[j] = regularization * p[j];
        }
        for (int i = 0; i < n; ++i) {
            double z = p[d];
            for (int j = 0; j < d; ++j) z += p[j] * features.at(i, j);
            double y = labels[i] == 1 ? 1.0 : -1.0;
            loss += softplus(-y * z);
            double coef = -y * sigmoid(-y * z);
            for (int j = 0; j < d; ++j) grad[j] += coef * features.at(i, j);
            grad[d] += coef;
        }
        return loss;
    }
};

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double vec_norm(const std::vector<double>& a) { return std::sqrt(vec_dot(a, a)); }

struct CurvaturePair {
    std::vector<double> s;
    std::vector<double> y;
    double rho = 0.0;
};

std::vector<double> lbfgs_direction(const std::vector<double>& grad,
                                    const std::deque<CurvaturePair>& pairs) {
    std::vector<double> q = grad;
    std::vector<double> alpha(pairs.size());
    for (std::size_t i = pairs.size(); i-- > 0;) {
        alpha[i] = pairs[i].rho * vec_dot(pairs[i].s, q);
        for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * pairs[i].y[j];
    }
    if (!pairs.empty()) {
        const CurvaturePair& last = pairs.back();
        double gamma = vec_dot(last.s, last.y) / vec_dot(last.y, last.y);
        for (double& v : q) v *= gamma;
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        double beta = pairs[i].rho * vec_dot(pairs[i].y, q);
        for (std::size_t j = 0; j < q.size(); ++j) q[j] += (alpha[i] - beta) * pairs[i].s[j];
    }
    for (double& v : q) v = -v;
    return q;
}

}  // namespace

LogRegModel logreg_fit(const Matrix& features, const std::vector<int>& labels,
                       std::vector<double>* iteration_losses) {
    check_training_inputs(features, labels, "logreg_fit");
    require_both_classes(labels, "logreg_fit");
    if (features.rows() < 2) throw Error("logreg_fit: need at least two samples");

    constexpr int kMaxIterations = 1000;
    constexpr int kHistory = 10;
    constexpr double kTolerance = 1e-6;
    constexpr double kArmijo = 1e-4;

    int d = features.cols();
    LogRegModel model;
    model.regularization = 1.0;
    LogRegProblem problem{features, labels, model.regularization};

    std::vector<double> p(d + 1, 0.0);
    std::vector<double> grad;
    double fval = problem.eval(p, grad);
    std::deque<CurvaturePair> pairs;

    int iter = 0;
    for (; iter < kMaxIterations; ++iter) {
        if (vec_norm(grad) <= kTolerance) break;
        std::vector<double> dir = lbfgs_direction(grad, pairs);
        double descent = vec_dot(grad, dir);
        if (descent >= 0.0) {
            for (std::size_t j = 0; j < dir.size(); ++j) dir[j] = -grad[j];
            descent = -vec_dot(grad, grad);
        }

        double step = 1.0;
        std::vector<double> candidate(p.size());
        std::vector<double> new_grad;
        double fnew = fval;
        bool accepted = false;
        while (step > 1e-20) {
            for (std::size_t j = 0; j < p.size(); ++j) candidate[j] = p[j] + step * dir[j];
            fnew = problem.eval(candidate, new_grad);
            if (fnew <= fval + kArmijo * step * descent) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        CurvaturePair pair;
        pair.s.resize(p.size());
        pair.y.resize(p.size());
        for (std::size_t j = 0; j < p.size(); ++j) {
            pair.s[j] = candidate[j] - p[j];
            pair.y[j] = new_grad[j] - grad[j];
        }
        double sy = vec_dot(pair.s, pair.y);
        if (sy > 1e-12) {
            pair.rho = 1.0 / sy;
            pairs.push_back(std::move(pair));
            if (pairs.size() > kHistory) pairs.pop_front();
        }
        p = candidate;
        grad = new_grad;
        fval = fnew;
        if (iteration_losses) iteration_losses->push_back(fval);
    }

    model.weights.assign(p.begin(), p.begin() + d);
    model.bias = p[d];
    model.final_gradient_norm = vec_norm(grad);
    model.converged = model.final_gradient_norm <= kTolerance;
    model.iterations = iter;
    return model;
}

double logreg_predict(const LogRegModel& model, const std::vector<double>& x) {
    check_feature_length(x.size(), static_cast<int>(model.weights.size()), "logreg_predict");
    double z = model.bias;
    for (std::size_t j = 0; j < x.size(); ++j) z += model.weights[j] * x[j];
    return sigmoid(z);
}

MlpGradients mlp_loss_and_grads(const std::vector<Matrix>& params, const Matrix& features,
                                const std::vector<int>& labels) {
    if (params.size() != 4) throw Error("mlp_loss_and_grads: expected 4 parameter blocks");
    const Matrix& w1 = params[0];
    const Matrix& b1 = params[1];
    const Matrix& w2 = params[2];
    const Matrix& b2 = params[3];
    int n = features.rows();
    int d = features.cols();
    int width = w1.cols();
    if (w1.rows() != d || b1.rows() != 1 || b1.cols() != width || w2.rows() != width ||
        w2.cols() != 1 || b2.rows() != 1 || b2.cols() != 1) {
        throw Error("mlp_loss_and_grads: inconsistent parameter shapes");
    }
    if (labels.size() != static_cast<std::size_t>(n)) {
        throw Error("mlp_loss_and_grads: label count does not match sample count");
    }

    Matrix z1 = matmul(features, w1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < width; ++j) z1.at(i, j) += b1.at(0, j);
    }
    Matrix h = z1;
    for (double& v : h.values()) v = std::max(0.0, v);

    Matrix z2 = matmul(h, w2);
    for (int i = 0; i < n; ++i) z2.at(i, 0) += b2.at(0, 0);

    MlpGradients result;
    Matrix dz2(n, 1);
    for (int i = 0; i < n; ++i) {
        double z = z2.at(i, 0);
        double y = static_cast<double>(labels[i]);
        result.loss += y * softplus(-z) + (1.0 - y) * softplus(z);
        dz2.at(i, 0) = (sigmoid(z) - y) / n;
    }
    result.loss /= n;

    Matrix grad_w2 = matmul(h.transposed(), dz2);
    Matrix grad_b2(1, 1);
    for (int i = 0; i < n; ++i) grad_b2.at(0, 0) += dz2.at(i, 0);

    Matrix dh = matmul(dz2, w2.transposed());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < width; ++j) {
            if (z1.at(i, j) <= 0.0) dh.at(i, j) = 0.0;
        }
    }
    Matrix grad_w1 = matmul(features.transposed(), dh);
    Matrix grad_b1(1, width);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < width; ++j) grad_b1.at(0, j) += dh.at(i, j);
    }

    result.grads = {std::move(grad_w1), std::move(grad_b1), std::move(grad_w2), std::move(grad_b2)};
    return result;
}

MlpModel mlp_fit(const Matrix& features, const std::vector<int>& labels, const MlpConfig& config,
                 std::vector<double>* epoch_losses) {
    check_training_inputs(features, labels, "mlp_fit");
    require_both_classes(labels, "mlp_fit");
    if (config.hidden_width < 1) throw Error("mlp_fit: hidden_width must be positive");
    if (config.max_iter < 0) throw Error("mlp_fit: max_iter must be non-negative");

    int n = features.rows();
    int d = features.cols();
    int width = config.hidden_width;

    MlpModel model;
    model.config = config;
    model.config.batch_size = std::min(config.batch_size, n);
    if (model.config.batch_size < 1) throw Error("mlp_fit: batch_size must be positive");

    Rng init_rng(config.seed, 0);
    double limit1 = std::sqrt(6.0 / (d + width));
    double limit2 = std::sqrt(6.0 / (width + 1));
    std::vector<Matrix> params(4);
    params[0] = Matrix(d, width);
    for (double& v : params[0].values()) v = init_rng.uniform(-limit1, limit1);
    params[1] = Matrix(1, width);
    params[2] = Matrix(width, 1);
    for (double& v : params[2].values()) v = init_rng.uniform(-limit2, limit2);
    params[3] = Matrix(1, 1);

    AdamState adam = AdamState::for_params(params, config.learning_rate);
    Rng shuffle_rng(config.seed, 1);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    double best_loss = std::numeric_limits<double>::infinity();
    int no_improve = 0;
    int batch_size = model.config.batch_size;

    for (int epoch = 0; epoch < config.max_iter; ++epoch) {
        shuffle_rng.shuffle(order);
        double total_loss = 0.0;
        for (int start = 0; start < n; start += batch_size) {
            int count = std::min(batch_size, n - start);
            Matrix batch(count, d);
            std::vector<int> batch_labels(count);
            for (int i = 0; i < count; ++i) {
                int src = order[start + i];
                std::copy(features.row(src), features.row(src) + d, batch.row(i));
                batch_labels[i] = labels[src];
            }
            MlpGradients g = mlp_loss_and_grads(params, batch, batch_labels);
            if (!std::isfinite(g.loss)) {
                throw Error("mlp_fit: non-finite loss at epoch " + std::to_string(epoch) +
                            ", batch " + std::to_string(start / batch_size));
            }
            adam_step(params, g.grads, adam);
            total_loss += g.loss * count;
        }
        double epoch_loss = total_loss / n;
        if (epoch_losses) epoch_losses->push_back(epoch_loss);
        if (epoch_loss > best_loss - config.tol) {
            if (++no_improve >= config.no_improvement_limit) break;
        } else {
            no_improve = 0;
        }
        best_loss = std::min(best_loss, epoch_loss);
    }

    model.hidden_weights = std::move(params[0]);
    model.hidden_bias = std::move(params[1]);
    model.output_weights = std::move(params[2]);
    model.output_bias = std::move(params[3]);
    return model;
}

double mlp_predict(const MlpModel& model, const std::vector<double>& x) {
    int d = model.hidden_weights.rows();
    int width = model.hidden_weights.cols();
    check_feature_length(x.size(), d, "mlp_predict");
    double z = model.output_bias.at(0, 0);
    for (int j = 0; j < width; ++j) {
        double a = model.hidden_bias.at(0, j);
        for (int i = 0; i < d; ++i) a += x[i] * model.hidden_weights.at(i, j);
        if (a > 0.0) z += a * model.output_weights.at(j, 0);
    }
    return sigmoid(z);
}

void save_gnb(const GnbModel& model, const ModelMeta& meta, const std::string& path) {
    nlohmann::ordered_json j = detail::model_envelope(meta, "gnb");
    j["config"] = nlohmann::ordered_json::object();
    j["parameters"] = {{"priors", model.priors},
                       {"means", detail::matrix_to_json(model.means)},
                       {"variances", detail::matrix_to_json(model.variances)},
                       {"smoothing", model.smoothing}};
    write_file(path, j.dump(2) + "\n");
}

GnbModel load_gnb(const std::string& path, ModelMeta* meta) {
    nlohmann::json j = detail::load_model_json(path, "gnb", meta);
    GnbModel model;
    try {
        const auto& p = j.at("parameters");
        model.priors = p.at("priors").get<std::vector<double>>();
        model.means = detail::matrix_from_json(p.at("means"), "gnb means");
        model.variances = detail::matrix_from_json(p.at("variances"), "gnb variances");
        model.smoothing = p.at("smoothing").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("model file " + path + ": " + e.what());
    }
    if (model.priors.size() != 2 || model.means.rows() != 2 || !model.means.same_shape(model.variances)) {
        throw Error("model file " + path + ": inconsistent gnb parameters");
    }
    return model;
}

void save_tree(const TreeModel& model, const ModelMeta& meta, const std::string& path) {
    nlohmann::ordered_json j = detail::model_envelope(meta, "tree");
    j["config"] = {{"max_depth", model.max_depth}};
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const TreeNode& node : model.nodes) {
        nodes.push_back({{"feature", node.feature},
                         {"threshold", node.threshold},
                         {"left", node.left},
                         {"right", node.right},
                         {"positive_fraction", node.positive_fraction}});
    }
    j["parameters"] = {{"nodes", std::move(nodes)}};
    write_file(path, j.dump(2) + "\n");
}

TreeModel load_tree(const std::string& path, ModelMeta* meta) {
    nlohmann::json j = detail::load_model_json(path, "tree", meta);
    TreeModel model;
    try {
        model.max_depth = j.at("config").at("max_depth").get<int>();
        for (const auto& jn : j.at("parameters").at("nodes")) {
            TreeNode node;
            node.feature = jn.at("feature").get<int>();
            node.threshold = jn.at("threshold").get<double>();
            node.left = jn.at("left").get<int>();
            node.right = jn.at("right").get<int>();
            node.positive_fraction = jn.at("positive_fraction").get<double>();
            model.nodes.push_back(node);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("model file " + path + ": " + e.what());
    }
    int count = static_cast<int>(model.nodes.size());
    if (count == 0) throw Error("model file " + path + ": tree has no nodes");
    for (const TreeNode& node : model.nodes) {
        if (node.feature >= 0 &&
            (node.left < 0 || node.left >= count || node.right < 0 || node.right >= count)) {
            throw Error("model file " + path + ": tree child index out of range");
        }
    }
    return model;
}

void save_logreg(const LogRegModel& model, const ModelMeta& meta, const std::string& path) {
    nlohmann::ordered_json j = detail::model_envelope(meta, "logreg");
    j["config"] = {{"regularization", model.regularization}};
    j["parameters"] = {{"weights", model.weights},
                       {"bias", model.bias},
                       {"converged", model.converged},
                       {"final_gradient_norm", model.final_gradient_norm},
                       {"iterations", model.iterations}};
    write_file(path, j.dump(2) + "\n");
}

LogRegModel load_logreg(const std::string& path, ModelMeta* meta) {
    nlohmann::json j = detail::load_model_json(path, "logreg", meta);
    LogRegModel model;
    try {
        model.regularization = j.at("config").at("regularization").get<double>();
        const auto& p = j.at("parameters");
        model.weights = p.at("weights").get<std::vector<double>>();
        model.bias = p.at("bias").get<double>();
        model.converged = p.at("converged").get<bool>();
        model.final_gradient_norm = p.at("final_gradient_norm").get<double>();
        model.iterations = p.at("iterations").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("model file " + path + ": " + e.what());
    }
    return model;
}

void save_mlp(const MlpModel& model, const ModelMeta& meta, const std::string& path) {
    nlohmann::ordered_json j = detail::model_envelope(meta, "mlp");
    j["config"] = {{"hidden_width", model.config.hidden_width},
                   {"max_iter", model.config.max_iter},
                   {"learning_rate", model.config.learning_rate},
                   {"tol", model.config.tol},
                   {"no_improvement_limit", model.config.no_improvement_limit},
                   {"batch_size", model.config.batch_size},
                   {"seed", model.config.seed}};
    j["parameters"] = {{"hidden_weights", detail::matrix_to_json(model.hidden_weights)},
                       {"hidden_bias", detail::matrix_to_json(model.hidden_bias)},
                       {"output_weights", detail::matrix_to_json(model.output_weights)},
                       {"output_bias", detail::matrix_to_json(model.output_bias)}};
    write_file(path, j.dump(2) + "\n");
}

MlpModel load_mlp(const std::string& path, ModelMeta* meta) {
    nlohmann::json j = detail::load_model_json(path, "mlp", meta);
    MlpModel model;
    try {
        const auto& c = j.at("config");
        model.config.hidden_width = c.at("hidden_width").get<int>();
        model.config.max_iter = c.at("max_iter").get<int>();
        model.config.learning_rate = c.at("learning_rate").get<double>();
        model.config.tol = c.at("tol").get<double>();
        model.config.no_improvement_limit = c.at("no_improvement_limit").get<int>();
        model.config.batch_size = c.at("batch_size").get<int>();
        model.config.seed = c.at("seed").get<std::uint64_t>();
        const auto& p = j.at("parameters");
        model.hidden_weights = detail::matrix_from_json(p.at("hidden_weights"), "mlp hidden_weights");
        model.hidden_bias = detail::matrix_from_json(p.at("hidden_bias"), "mlp hidden_bias");
        model.output_weights = detail::matrix_from_json(p.at("output_weights"), "mlp output_weights");
        model.output_bias = detail::matrix_from_json(p.at("output_bias"), "mlp output_bias");
    } catch (const nlohmann::json::exception& e) {
        throw Error("model file " + path + ": " + e.what());
    }
    return model;
}

}  // namespace vulnlex
