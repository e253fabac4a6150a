#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "vulnlex/baselines.hpp"
#include "vulnlex/numerics.hpp"
#include "vulnlex/rng.hpp"
#include "vulnlex/util.hpp"

using namespace vulnlex;

namespace {

std::string temp_path(const std::string& name) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "vulnlex_baselines_test";
    fs::create_directories(dir);
    return (dir / name).string();
}

struct Toy {
    Matrix features;
    std::vector<int> labels;
};

Toy random_toy(Rng& rng, int n, int d, double shift) {
    Toy toy;
    toy.features = Matrix(n, d);
    for (int i = 0; i < n; ++i) {
        int label = i % 2;
        toy.labels.push_back(label);
        for (int j = 0; j < d; ++j) {
            toy.features.at(i, j) = rng.normal() + (label ? shift : -shift);
        }
    }
    return toy;
}

std::vector<double> row_vec(const Matrix& m, int r) {
    return std::vector<double>(m.row(r), m.row(r) + m.cols());
}

ModelMeta test_meta() {
    ModelMeta meta;
    meta.seed = 9;
    meta.config_digest = "cafe";
    meta.embedding_checksum = "beef";
    meta.vuln_class = "xss";
    return meta;
}

}  // namespace

TEST_CASE("gnb matches a closed-form hand computation") {
    // Two 1-D classes: class 0 = {1, 3}, class 1 = {6, 10}.
    Matrix features(4, 1, {1, 3, 6, 10});
    std::vector<int> labels = {0, 0, 1, 1};
    GnbModel model = gnb_fit(features, labels);

    CHECK(model.priors[0] == 0.5);
    CHECK(model.priors[1] == 0.5);
    CHECK(model.means.at(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(model.means.at(1, 0) == doctest::Approx(8.0).epsilon(1e-12));
    // Population variances 1 and 4, plus 1e-9 * max overall variance.
    double overall_var = (1 * 1 + 3 * 3 + 6 * 6 + 10 * 10) / 4.0 - 5.0 * 5.0;
    double eps = 1e-9 * overall_var;
    CHECK(model.variances.at(0, 0) == doctest::Approx(1.0 + eps).epsilon(1e-12));
    CHECK(model.variances.at(1, 0) == doctest::Approx(4.0 + eps).epsilon(1e-12));

    auto log_gauss = [](double x, double mean, double var) {
        return -0.5 * std::log(2.0 * 3.14159265358979323846 * var) -
               (x - mean) * (x - mean) / (2.0 * var);
    };
    for (double x : {0.0, 2.0, 4.5, 7.0, 12.0}) {
        double lp0 = std::log(0.5) + log_gauss(x, 2.0, 1.0 + eps);
        double lp1 = std::log(0.5) + log_gauss(x, 8.0, 4.0 + eps);
        double want = 1.0 / (1.0 + std::exp(lp0 - lp1));
        CHECK(gnb_predict(model, {x}) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("gnb is symmetric at the midpoint of mirrored classes") {
    Matrix features(4, 1, {-2, -1, 1, 2});
    std::vector<int> labels = {0, 0, 1, 1};
    GnbModel model = gnb_fit(features, labels);
    CHECK(gnb_predict(model, {0.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gnb_predict(model, {1.5}) + gnb_predict(model, {-1.5}) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gnb handles constant features via the smoothing floor") {
    Matrix features(4, 2, {1, 5, 1, 5, 1, 5, 1, 5});
    std::vector<int> labels = {0, 0, 1, 1};
    GnbModel model = gnb_fit(features, labels);
    double p = gnb_predict(model, {1, 5});
    CHECK(std::isfinite(p));
    CHECK(p == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("gnb respects class priors") {
    Matrix features(4, 1, {0, 0, 0, 1});
    std::vector<int> labels = {0, 0, 0, 1};
    GnbModel model = gnb_fit(features, labels);
    CHECK(model.priors[0] == doctest::Approx(0.75));
    CHECK(model.priors[1] == doctest::Approx(0.25));
}

TEST_CASE("gnb training input validation") {
    CHECK_THROWS_AS(gnb_fit(Matrix(2, 2), {0, 0}), Error);     // single class
    CHECK_THROWS_AS(gnb_fit(Matrix(2, 2), {0}), Error);        // label count
    CHECK_THROWS_AS(gnb_fit(Matrix(0, 2), {}), Error);         // empty
    CHECK_THROWS_AS(gnb_fit(Matrix(2, 0), {0, 1}), Error);     // zero-length features
    CHECK_THROWS_AS(gnb_fit(Matrix(2, 1), {0, 2}), Error);     // label domain
}

TEST_CASE("depth-1 tree equals an exhaustive split search") {
    Rng rng(41, 0);
    for (int iter = 0; iter < 25; ++iter) {
        int n = 8 + static_cast<int>(rng.next_below(20));
        int d = 1 + static_cast<int>(rng.next_below(3));
        Matrix features(n, d);
        std::vector<int> labels;
        for (int i = 0; i < n; ++i) {
            labels.push_back(i % 2);
            for (int j = 0; j < d; ++j) {
                features.at(i, j) = rng.next_below(6);  // coarse grid forces ties
            }
        }

        TreeModel model = tree_fit(features, labels, 1);
        if (model.nodes[0].feature < 0) continue;  // no improving split exists

        // Exhaustive search over midpoints of adjacent distinct values.
        double best_gini = std::numeric_limits<double>::infinity();
        int best_feature = -1;
        double best_threshold = 0.0;
        for (int j = 0; j < d; ++j) {
            std::vector<double> values;
            for (int i = 0; i < n; ++i) values.push_back(features.at(i, j));
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            for (std::size_t v = 1; v < values.size(); ++v) {
                double threshold = 0.5 * (values[v - 1] + values[v]);
                int lp = 0, ln = 0, rp = 0, rn = 0;
                for (int i = 0; i < n; ++i) {
                    bool left = features.at(i, j) <= threshold;
                    (left ? (labels[i] ? lp : ln) : (labels[i] ? rp : rn))++;
                }
                auto gini = [](int p, int q) {
                    if (p + q == 0) return 0.0;
                    double fp = static_cast<double>(p) / (p + q);
                    return 1.0 - fp * fp - (1.0 - fp) * (1.0 - fp);
                };
                double weighted = ((lp + ln) * gini(lp, ln) + (rp + rn) * gini(rp, rn)) / n;
                if (weighted < best_gini - 1e-12) {
                    best_gini = weighted;
                    best_feature = j;
                    best_threshold = threshold;
                }
            }
        }
        REQUIRE(best_feature >= 0);

        // The chosen split must achieve the optimal impurity (tie-breaking may
        // pick a different equally-good split point).
        int lp = 0, ln = 0, rp = 0, rn = 0;
        for (int i = 0; i < n; ++i) {
            bool left = features.at(i, model.nodes[0].feature) <= model.nodes[0].threshold;
            (left ? (labels[i] ? lp : ln) : (labels[i] ? rp : rn))++;
        }
        auto gini = [](int p, int q) {
            if (p + q == 0) return 0.0;
            double fp = static_cast<double>(p) / (p + q);
            return 1.0 - fp * fp - (1.0 - fp) * (1.0 - fp);
        };
        double chosen = ((lp + ln) * gini(lp, ln) + (rp + rn) * gini(rp, rn)) / n;
        CHECK(chosen == doctest::Approx(best_gini).epsilon(1e-9));
    }
}

TEST_CASE("tree separates a linearly separable feature at depth 1") {
    Matrix features(6, 2, {0, 9, 1, 4, 2, 7, 5, 1, 6, 8, 7, 3});
    std::vector<int> labels = {0, 0, 0, 1, 1, 1};
    TreeModel model = tree_fit(features, labels, 1);
    REQUIRE(model.nodes[0].feature == 0);
    CHECK(model.nodes[0].threshold == doctest::Approx(3.5));
    CHECK(tree_predict(model, {1.0, 5.0}) == 0.0);
    CHECK(tree_predict(model, {6.5, 5.0}) == 1.0);
}

TEST_CASE("tree depth never exceeds the limit and grows with it") {
    Rng rng(42, 0);
    Matrix features(64, 3);
    std::vector<int> labels;
    for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < 3; ++j) features.at(i, j) = rng.next_double();
        // xor-ish target needs depth > 1
        labels.push_back((features.at(i, 0) > 0.5) != (features.at(i, 1) > 0.5) ? 1 : 0);
    }
    for (int limit : {1, 2, 3, 4}) {
        TreeModel model = tree_fit(features, labels, limit);
        CHECK(tree_depth(model) <= limit);
    }
    TreeModel deep = tree_fit(features, labels, 6);
    CHECK(tree_depth(deep) >= 2);
}

TEST_CASE("pure nodes become leaves regardless of remaining depth") {
    Matrix features(4, 1, {0, 1, 10, 11});
    std::vector<int> labels = {0, 0, 1, 1};
    TreeModel model = tree_fit(features, labels, 10);
    CHECK(tree_depth(model) == 1);
    REQUIRE(model.nodes[0].feature == 0);
    const TreeNode& left = model.nodes[model.nodes[0].left];
    const TreeNode& right = model.nodes[model.nodes[0].right];
    CHECK(left.feature == -1);
    CHECK(right.feature == -1);
    CHECK(left.positive_fraction == 0.0);
    CHECK(right.positive_fraction == 1.0);
}

TEST_CASE("max_depth 0 yields a single leaf with the base rate") {
    Matrix features(4, 1, {0, 1, 2, 3});
    std::vector<int> labels = {0, 1, 1, 1};
    TreeModel model = tree_fit(features, labels, 0);
    REQUIRE(model.nodes.size() == 1);
    CHECK(model.nodes[0].feature == -1);
    CHECK(model.nodes[0].positive_fraction == doctest::Approx(0.75));
    CHECK(tree_predict(model, {99.0}) == doctest::Approx(0.75));
}

TEST_CASE("logistic regression separates and stays antisymmetric") {
    Matrix features(8, 1, {-4, -3, -2, -1, 1, 2, 3, 4});
    std::vector<int> labels = {0, 0, 0, 0, 1, 1, 1, 1};
    LogRegModel model = logreg_fit(features, labels);
    CHECK(model.converged);
    CHECK(std::abs(model.bias) < 1e-4);  // mirrored data
    CHECK(logreg_predict(model, {3.0}) > 0.9);
    CHECK(logreg_predict(model, {-3.0}) < 0.1);
    CHECK(logreg_predict(model, {2.0}) + logreg_predict(model, {-2.0}) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("logistic regression beats a dense grid search on 2-D toys") {
    Rng rng(43, 0);
    for (int iter = 0; iter < 5; ++iter) {
        Toy toy = random_toy(rng, 30, 2, 0.8);
        std::vector<double> losses;
        LogRegModel model = logreg_fit(toy.features, toy.labels, &losses);
        double fitted = logreg_loss(model.weights, model.bias, model.regularization, toy.features,
                                    toy.labels);

        double best_grid = std::numeric_limits<double>::infinity();
        for (double w0 = -3; w0 <= 3; w0 += 0.25) {
            for (double w1 = -3; w1 <= 3; w1 += 0.25) {
                for (double b = -2; b <= 2; b += 0.25) {
                    best_grid = std::min(
                        best_grid, logreg_loss({w0, w1}, b, model.regularization, toy.features,
                                               toy.labels));
                }
            }
        }
        CHECK(fitted <= best_grid + 1e-4);
        REQUIRE(!losses.empty());
        CHECK(losses.back() == doctest::Approx(fitted).epsilon(1e-9));
        CHECK(std::is_sorted(losses.rbegin(), losses.rend()));  // non-increasing objective
    }
}

TEST_CASE("logistic regression reports non-convergence with the gradient norm") {
    // One unconstrained pass cannot converge in a single iteration; force the
    // situation with an effectively unreachable tolerance by separable data
    // (weights diverge) and verify the report fields stay coherent.
    Matrix features(4, 1, {-1, -0.5, 0.5, 1});
    std::vector<int> labels = {0, 0, 1, 1};
    LogRegModel model = logreg_fit(features, labels);
    CHECK(model.iterations >= 1);
    CHECK(std::isfinite(model.final_gradient_norm));
    if (!model.converged) CHECK(model.final_gradient_norm > 1e-6);
}

TEST_CASE("mlp gradients pass the finite-difference check") {
    Rng rng(44, 0);
    int n = 6, d = 3, width = 4;
    Matrix features(n, d);
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
        labels.push_back(i % 2);
        for (int j = 0; j < d; ++j) features.at(i, j) = rng.uniform(-1, 1);
    }
    std::vector<Matrix> params{Matrix(d, width), Matrix(1, width), Matrix(width, 1), Matrix(1, 1)};
    for (Matrix& p : params) {
        for (double& v : p.values()) v = rng.uniform(-0.9, 0.9);
    }

    DifferentiableFn f;
    f.value = [&](const std::vector<Matrix>& p) {
        return mlp_loss_and_grads(p, features, labels).loss;
    };
    f.gradient = [&](const std::vector<Matrix>& p) {
        return mlp_loss_and_grads(p, features, labels).grads;
    };
    CHECK(gradient_check(f, params, 1e-5) < 1e-6);
}

TEST_CASE("mlp with zero weights predicts through the output bias alone") {
    std::vector<Matrix> params{Matrix(2, 3), Matrix(1, 3), Matrix(3, 1), Matrix(1, 1)};
    params[3].at(0, 0) = 0.4;
    MlpModel model;
    model.hidden_weights = params[0];
    model.hidden_bias = params[1];
    model.output_weights = params[2];
    model.output_bias = params[3];
    CHECK(mlp_predict(model, {5.0, -2.0}) == doctest::Approx(sigmoid(0.4)).epsilon(1e-15));
}

TEST_CASE("mlp learns xor") {
    Matrix features(4, 2, {0, 0, 0, 1, 1, 0, 1, 1});
    std::vector<int> labels = {0, 1, 1, 0};
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        MlpConfig config;
        config.hidden_width = 8;
        config.max_iter = 3000;
        config.learning_rate = 0.05;
        config.tol = 0.0;  // run the full budget
        config.seed = seed;
        MlpModel model = mlp_fit(features, labels, config);
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
            double p = mlp_predict(model, row_vec(features, i));
            ok = ok && ((p >= 0.5) == (labels[i] == 1));
        }
        solved += ok;
    }
    CHECK(solved >= 4);  // xor is occasionally lost to a bad start
}

TEST_CASE("mlp early stopping halts before the epoch budget on easy data") {
    Rng rng(45, 0);
    Toy toy = random_toy(rng, 40, 2, 3.0);
    MlpConfig config;
    config.hidden_width = 6;
    config.max_iter = 2000;
    config.learning_rate = 0.05;
    config.seed = 1;
    std::vector<double> losses;
     MlpModel model = mlp_fit(toy.features, toy.labels, config, &losses);
    CHECK(losses.size() < 2000);
    CHECK(losses.size() >= 11);  // at least the patience window
    (void)model;
}

TEST_CASE("mlp training is deterministic for a fixed seed") {
    Rng rng(46, 0);
    Toy toy = random_toy(rng, 24, 3, 1.0);
    MlpConfig config;
    config.hidden_width = 5;
    config.max_iter = 50;
    config.seed = 12;
    MlpModel a = mlp_fit(toy.features, toy.labels, config);
    MlpModel b = mlp_fit(toy.features, toy.labels, config);
    CHECK(a.hidden_weights == b.hidden_weights);
    CHECK(a.output_weights == b.output_weights);
    config.seed = 13;
    MlpModel c = mlp_fit(toy.features, toy.labels, config);
    CHECK(a.hidden_weights != c.hidden_weights);
}

TEST_CASE("model files round-trip with bit-identical predictions") {
    Rng rng(47, 0);
    Toy toy = random_toy(rng, 30, 3, 1.2);
    ModelMeta meta = test_meta();

    std::vector<std::vector<double>> probes;
    for (int i = 0; i < 10; ++i) {
        probes.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)});
    }

    SUBCASE("gnb") {
        GnbModel model = gnb_fit(toy.features, toy.labels);
        std::string path = temp_path("gnb.model.json");
        save_gnb(model, meta, path);
        ModelMeta got;
        GnbModel loaded = load_gnb(path, &got);
        for (const auto& p : probes) CHECK(gnb_predict(model, p) == gnb_predict(loaded, p));
        CHECK(got.kind == "gnb");
        CHECK(got.seed == meta.seed);
        CHECK(got.vuln_class == meta.vuln_class);
        CHECK(got.embedding_checksum == meta.embedding_checksum);
    }
    SUBCASE("tree") {
        TreeModel model = tree_fit(toy.features, toy.labels, 4);
        std::string path = temp_path("tree.model.json");
        save_tree(model, meta, path);
        TreeModel loaded = load_tree(path);
        for (const auto& p : probes) CHECK(tree_predict(model, p) == tree_predict(loaded, p));
        CHECK(loaded.max_depth == model.max_depth);
    }
    SUBCASE("logreg") {
        LogRegModel model = logreg_fit(toy.features, toy.labels);
        std::string path = temp_path("logreg.model.json");
        save_logreg(model, meta, path);
        LogRegModel loaded = load_logreg(path);
        for (const auto& p : probes) CHECK(logreg_predict(model, p) == logreg_predict(loaded, p));
        CHECK(loaded.converged == model.converged);
        CHECK(loaded.final_gradient_norm == model.final_gradient_norm);
    }
    SUBCASE("mlp") {
        MlpConfig config;
        config.hidden_width = 4;
        config.max_iter = 30;
        config.seed = 3;
        MlpModel model = mlp_fit(toy.features, toy.labels, config);
        std::string path = temp_path("mlp.model.json");
        save_mlp(model, meta, path);
        MlpModel loaded = load_mlp(path);
        for (const auto& p : probes) CHECK(mlp_predict(model, p) == mlp_predict(loaded, p));
        CHECK(loaded.config.hidden_width == 4);
    }
}

TEST_CASE("loading rejects the wrong kind and corrupted files") {
    Rng rng(48, 0);
    Toy toy = random_toy(rng, 20, 2, 1.0);
    GnbModel model = gnb_fit(toy.features, toy.labels);
    std::string path = temp_path("kind.model.json");
    save_gnb(model, test_meta(), path);
    CHECK_THROWS_AS(load_tree(path), Error);
    CHECK_THROWS_AS(load_mlp(path), Error);

    write_file(path, "{ not json");
    CHECK_THROWS_AS(load_gnb(path), Error);
    write_file(path, "{\"kind\":\"gnb\",\"version\":99}");
    CHECK_THROWS_AS(load_gnb(path), Error);
}

TEST_CASE("read_model_meta works for any kind") {
    Rng rng(49, 0);
    Toy toy = random_toy(rng, 20, 2, 1.0);
    std::string path = temp_path("meta.model.json");
    save_logreg(logreg_fit(toy.features, toy.labels), test_meta(), path);
    ModelMeta meta = read_model_meta(path);
    CHECK(meta.kind == "logreg");
    CHECK(meta.seed == 9);
    CHECK(meta.train_fraction == doctest::Approx(0.7));
    CHECK(meta.max_len == 200);
}
