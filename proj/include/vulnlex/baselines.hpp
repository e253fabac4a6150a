#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vulnlex/matrix.hpp"
#include "vulnlex/model_io.hpp"

namespace vulnlex {

// Gaussian naive Bayes over binary labels. Variances are stored after
// smoothing (epsilon = 1e-9 times the largest overall feature variance,
// floored so it stays positive on constant data).
struct GnbModel {
    std::vector<double> priors;  // indexed by class label
    Matrix means;                // 2 x d
    Matrix variances;            // 2 x d
    double smoothing = 0.0;
};

GnbModel gnb_fit(const Matrix& features, const std::vector<int>& labels);
double gnb_predict(const GnbModel& model, const std::vector<double>& x);

// Depth-limited decision tree split on Gini impurity. feature == -1 marks a
// leaf; children are indices into the node vector.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double positive_fraction = 0.0;
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // node 0 is the root
    int max_depth = 5;
};

TreeModel tree_fit(const Matrix& features, const std::vector<int>& labels, int max_depth);
double tree_predict(const TreeModel& model, const std::vector<double>& x);
// Depth in edges of the deepest node.
int tree_depth(const TreeModel& model);

struct LogRegModel {
    std::vector<double> weights;
    double bias = 0.0;
    double regularization = 1.0;
    bool converged = false;
    double final_gradient_norm = 0.0;
    int iterations = 0;
};

// 0.5*reg*||w||^2 plus the summed logistic loss; the bias is unregularized.
double logreg_loss(const std::vector<double>& weights, double bias, double regularization,
                   const Matrix& features, const std::vector<int>& labels);
// iteration_losses, when given, receives the objective after each accepted
// quasi-Newton step.
LogRegModel logreg_fit(const Matrix& features, const std::vector<int>& labels,
                       std::vector<double>* iteration_losses = nullptr);
double logreg_predict(const LogRegModel& model, const std::vector<double>& x);

struct MlpConfig {
    int hidden_width = 100;
    int max_iter = 300;
    double learning_rate = 0.001;
    double tol = 1e-4;
    int no_improvement_limit = 10;
    int batch_size = 200;  // capped at the sample count
    std::uint64_t seed = 0;
};

struct MlpModel {
    Matrix hidden_weights;  // d x width
    Matrix hidden_bias;     // 1 x width
    Matrix output_weights;  // width x 1
    Matrix output_bias;     // 1 x 1
    MlpConfig config;
};

struct MlpGradients {
    double loss = 0.0;
    std::vector<Matrix> grads;
};

// Mean log-loss and gradients over a batch. Parameter order is
// {hidden_weights, hidden_bias, output_weights, output_bias}; width and input
// dim follow from the shapes, so tiny configurations can be gradient-checked.
MlpGradients mlp_loss_and_grads(const std::vector<Matrix>& params, const Matrix& features,
                                const std::vector<int>& labels);
// epoch_losses, when given, receives the mean log-loss of each epoch run.
MlpModel mlp_fit(const Matrix& features, const std::vector<int>& labels,
                 const MlpConfig& config = {}, std::vector<double>* epoch_losses = nullptr);
double mlp_predict(const MlpModel& model, const std::vector<double>& x);

void save_gnb(const GnbModel& model, const ModelMeta& meta, const std::string& path);
GnbModel load_gnb(const std::string& path, ModelMeta* meta = nullptr);
void save_tree(const TreeModel& model, const ModelMeta& meta, const std::string& path);
TreeModel load_tree(const std::string& path, ModelMeta* meta = nullptr);
void save_logreg(const LogRegModel& model, const ModelMeta& meta, const std::string& path);
LogRegModel load_logreg(const std::string& path, ModelMeta* meta = nullptr);
void save_mlp(const MlpModel& model, const ModelMeta& meta, const std::string& path);
MlpModel load_mlp(const std::string& path, ModelMeta* meta = nullptr);

}  // namespace vulnlex
