#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vulnlex/embedding.hpp"
#include "vulnlex/lexer.hpp"
#include "vulnlex/matrix.hpp"
#include "vulnlex/model_io.hpp"
#include "vulnlex/rng.hpp"

namespace vulnlex {

// Gate order everywhere: input, forget, cell-candidate, output.
enum : int { kGateInput = 0, kGateForget = 1, kGateCandidate = 2, kGateOutput = 3 };

struct LstmCellParams {
    std::array<Matrix, 4> w_in;   // in_dim x hidden
    std::array<Matrix, 4> w_rec;  // hidden x hidden
    std::array<Matrix, 4> bias;   // 1 x hidden
};

struct BiLstmLayer {
    LstmCellParams forward;
    LstmCellParams backward;
};

// Stacked bidirectional layers; layer k > 0 consumes the per-position
// concatenation of layer k-1's two directions. The readout concatenates the
// forward state at the last valid position with the backward state at
// position 0, then maps it through a single affine unit with a sigmoid.
struct BiLstmNetwork {
    std::vector<BiLstmLayer> layers;
    Matrix head_weights;  // (2 * hidden) x 1
    Matrix head_bias;     // 1 x 1
    double dropout_rate = 0.2;

    int input_dim() const { return layers.front().forward.w_in[0].rows(); }
    int hidden_dim() const { return layers.front().forward.w_in[0].cols(); }
    int num_layers() const { return static_cast<int>(layers.size()); }
};

// Glorot-uniform input weights, orthogonal recurrent weights, zero biases
// except the forget gate at 1.0.
BiLstmNetwork make_bilstm(int input_dim, int hidden, int num_layers, double dropout_rate,
                          std::uint64_t seed);

// Canonical parameter order: per layer, forward then backward direction, each
// as w_in[4], w_rec[4], bias[4]; then head weights and head bias. Gradients
// from backward() use the same order.
std::vector<Matrix*> parameter_refs(BiLstmNetwork& net);
std::vector<Matrix> parameters(const BiLstmNetwork& net);
void set_parameters(BiLstmNetwork& net, const std::vector<Matrix>& params);

struct DirectionCache {
    std::vector<std::array<std::vector<double>, 4>> gates;  // post-activation, per position
    std::vector<std::vector<double>> cell;
    std::vector<std::vector<double>> tanh_cell;
    std::vector<std::vector<double>> hidden;
};

struct LayerCache {
    Matrix input;       // valid_length x in_dim, after dropout
    Matrix input_mask;  // inverted-dropout multipliers; empty when dropout off
    DirectionCache fw;
    DirectionCache bw;
};

struct ForwardCache {
    std::vector<LayerCache> layers;
    std::vector<double> readout;       // after dropout
    std::vector<double> readout_mask;  // empty when dropout off
    double pre_activation = 0.0;
    double score = 0.0;
    int valid_length = 0;
};

// Inference pass: no dropout, no cache. Only the valid region enters the
// recurrence, so padding rows never affect the score.
double forward_infer(const BiLstmNetwork& net, const EmbeddedSequence& seq);

// Training pass with cached activations. Dropout is applied when
// net.dropout_rate > 0, drawing masks from dropout_rng (required then).
ForwardCache forward_train(const BiLstmNetwork& net, const EmbeddedSequence& seq,
                           Rng* dropout_rng);

// Exact loss gradients for every parameter given d loss / d score, routed
// through both time directions, the concatenations, and the dropout masks
// recorded in the cache.
std::vector<Matrix> backward(const BiLstmNetwork& net, const ForwardCache& cache, double dscore);

struct TrainConfig {
    int epochs = 50;
    int batch_size = 128;
    double dropout_rate = 0.2;
    double learning_rate = 0.001;  // Adam, numerics defaults otherwise
    double clip_norm = 0.0;        // max-norm gradient clip; 0 disables
    std::uint64_t seed = 0;

    void validate() const;
    std::string digest() const;
};

struct TrainSample {
    EmbeddedSequence seq;
    int label = 0;
};

struct EpochStats {
    double train_loss = 0.0;
    double validation_accuracy = 0.0;
};

struct TrainHistory {
    std::vector<EpochStats> epochs;
};

// Squared-error training with per-epoch seeded shuffles and fresh per-sample
// dropout masks. Gradients within a batch are averaged in sample order, so
// results do not depend on how many threads computed them.
TrainHistory fit(BiLstmNetwork& net, const std::vector<TrainSample>& train,
                 const std::vector<TrainSample>& validation, const TrainConfig& config);

struct Prediction {
    double score = 0.0;
    int label = 0;  // 1 iff score >= threshold
};

Prediction predict(const BiLstmNetwork& net, const TokenStream& stream,
                   const EmbeddingModel& embedding, double threshold, int max_len = 200);

void save_bilstm(const BiLstmNetwork& net, const ModelMeta& meta, const std::string& path);
BiLstmNetwork load_bilstm(const std::string& path, ModelMeta* meta = nullptr);

}  // namespace vulnlex
