#include "vulnlex/bilstm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "model_json.hpp"
#include "vulnlex/kernels.hpp"
#include "vulnlex/numerics.hpp"
#include "vulnlex/util.hpp"

namespace vulnlex {

namespace {

constexpr int kMatricesPerDirection = 12;  // w_in[4], w_rec[4], bias[4]

void validate_network(const BiLstmNetwork& net) {
    if (net.layers.empty()) throw Error("bilstm: network has no layers");
    int hidden = net.hidden_dim();
    for (int l = 0; l < net.num_layers(); ++l) {
        int in_dim = l == 0 ? net.input_dim() : 2 * hidden;
        for (const LstmCellParams* cell : {&net.layers[l].forward, &net.layers[l].backward}) {
            for (int g = 0; g < 4; ++g) {
                if (cell->w_in[g].rows() != in_dim || cell->w_in[g].cols() != hidden ||
                    cell->w_rec[g].rows() != hidden || cell->w_rec[g].cols() != hidden ||
                    cell->bias[g].rows() != 1 || cell->bias[g].cols() != hidden) {
                    throw Error("bilstm: inconsistent parameter shapes at layer " + std::to_string(l));
                }
            }
        }
    }
    if (net.head_weights.rows() != 2 * hidden || net.head_weights.cols() != 1 ||
        net.head_bias.rows() != 1 || net.head_bias.cols() != 1) {
        throw Error("bilstm: inconsistent head shapes");
    }
}

Matrix glorot(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    double limit = std::sqrt(6.0 / (rows + cols));
    for (double& v : m.values()) v = rng.uniform(-limit, limit);
    return m;
}

Matrix orthogonal(int n, Rng& rng) {
    Matrix q(n, n);
    for (double& v : q.values()) v = rng.normal();
    // Modified Gram-Schmidt over columns.
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            double dot = 0.0;
            for (int r = 0; r < n; ++r) dot += q.at(r, k) * q.at(r, j);
            for (int r = 0; r < n; ++r) q.at(r, j) -= dot * q.at(r, k);
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += q.at(r, j) * q.at(r, j);
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw Error("bilstm: degenerate orthogonal initialization");
        for (int r = 0; r < n; ++r) q.at(r, j) /= norm;
    }
    return q;
}

LstmCellParams make_cell(int in_dim, int hidden, Rng& rng) {
    LstmCellParams cell;
    for (int g = 0; g < 4; ++g) cell.w_in[g] = glorot(in_dim, hidden, rng);
    for (int g = 0; g < 4; ++g) cell.w_rec[g] = orthogonal(hidden, rng);
    for (int g = 0; g < 4; ++g) {
        cell.bias[g] = Matrix(1, hidden);
        if (g == kGateForget) cell.bias[g].fill(1.0);
    }
    return cell;
}

}  // namespace

BiLstmNetwork make_bilstm(int input_dim, int hidden, int num_layers, double dropout_rate,
                          std::uint64_t seed) {
    if (input_dim < 1) throw Error("bilstm: input_dim must be positive");
    if (hidden < 1) throw Error("bilstm: hidden must be positive");
    if (num_layers < 1) throw Error("bilstm: num_layers must be positive");
    if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
        throw Error("bilstm: dropout_rate must be in [0, 1)");
    }
    BiLstmNetwork net;
    net.dropout_rate = dropout_rate;
    Rng rng(seed, 0);
    for (int l = 0; l < num_layers; ++l) {
        int in_dim = l == 0 ? input_dim : 2 * hidden;
        BiLstmLayer layer;
        layer.forward = make_cell(in_dim, hidden, rng);
        layer.backward = make_cell(in_dim, hidden, rng);
        net.layers.push_back(std::move(layer));
    }
    net.head_weights = glorot(2 * hidden, 1, rng);
    net.head_bias = Matrix(1, 1);
    return net;
}

std::vector<Matrix*> parameter_refs(BiLstmNetwork& net) {
    std::vector<Matrix*> refs;
    refs.reserve(net.layers.size() * 2 * kMatricesPerDirection + 2);
    for (BiLstmLayer& layer : net.layers) {
        for (LstmCellParams* cell : {&layer.forward, &layer.backward}) {
            for (int g = 0; g < 4; ++g) refs.push_back(&cell->w_in[g]);
            for (int g = 0; g < 4; ++g) refs.push_back(&cell->w_rec[g]);
            for (int g = 0; g < 4; ++g) refs.push_back(&cell->bias[g]);
        }
    }
    refs.push_back(&net.head_weights);
    refs.push_back(&net.head_bias);
    return refs;
}

std::vector<Matrix> parameters(const BiLstmNetwork& net) {
    std::vector<Matrix> out;
    auto refs = parameter_refs(const_cast<BiLstmNetwork&>(net));
    out.reserve(refs.size());
    for (const Matrix* m : refs) out.push_back(*m);
    return out;
}

void set_parameters(BiLstmNetwork& net, const std::vector<Matrix>& params) {
    std::vector<Matrix*> refs = parameter_refs(net);
    if (params.size() != refs.size()) throw Error("bilstm set_parameters: arity mismatch");
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (!refs[i]->same_shape(params[i])) throw Error("bilstm set_parameters: shape mismatch");
        *refs[i] = params[i];
    }
}

namespace {

// One cell step; h_prev/c_prev null at the scan origin.
void lstm_step(const LstmCellParams& p, const double* x, int in_dim,
               const std::vector<double>* h_prev, const std::vector<double>* c_prev,
               std::array<std::vector<double>, 4>& gates, std::vector<double>& cell,
               std::vector<double>& tanh_cell, std::vector<double>& hidden) {
    int h = p.w_in[0].cols();
    std::array<std::vector<double>, 4> pre;
    for (int g = 0; g < 4; ++g) {
        pre[g].assign(p.bias[g].data(), p.bias[g].data() + h);
        kernels::vecmat_accum(x, p.w_in[g].data(), pre[g].data(), in_dim, h);
        if (h_prev) kernels::vecmat_accum(h_prev->data(), p.w_rec[g].data(), pre[g].data(), h, h);
        gates[g].resize(h);
    }
    cell.resize(h);
    tanh_cell.resize(h);
    hidden.resize(h);
    for (int j = 0; j < h; ++j) {
        double gi = sigmoid(pre[kGateInput][j]);
        double gf = sigmoid(pre[kGateForget][j]);
        double gc = std::tanh(pre[kGateCandidate][j]);
        double go = sigmoid(pre[kGateOutput][j]);
        double prev = c_prev ? (*c_prev)[j] : 0.0;
        double c = gf * prev + gi * gc;
        double tc = std::tanh(c);
        gates[kGateInput][j] = gi;
        gates[kGateForget][j] = gf;
        gates[kGateCandidate][j] = gc;
        gates[kGateOutput][j] = go;
        cell[j] = c;
        tanh_cell[j] = tc;
        hidden[j] = go * tc;
    }
}

// Scans the valid region in one direction; caches are indexed by position,
// not scan step.
void scan_direction(const LstmCellParams& p, const Matrix& input, bool reverse,
                    DirectionCache& cache) {
    int length = input.rows();
    cache.gates.resize(length);
    cache.cell.resize(length);
    cache.tanh_cell.resize(length);
    cache.hidden.resize(length);
    const std::vector<double>* h_prev = nullptr;
    const std::vector<double>* c_prev = nullptr;
    for (int step = 0; step < length; ++step) {
        int t = reverse ? length - 1 - step : step;
        lstm_step(p, input.row(t), input.cols(), h_prev, c_prev, cache.gates[t], cache.cell[t],
                  cache.tanh_cell[t], cache.hidden[t]);
        h_prev = &cache.hidden[t];
        c_prev = &cache.cell[t];
    }
}

void apply_dropout(Matrix& activations, Matrix& mask, double rate, Rng& rng) {
    mask = Matrix(activations.rows(), activations.cols());
    double keep_scale = 1.0 / (1.0 - rate);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        mask.values()[i] = rng.next_double() < rate ? 0.0 : keep_scale;
        activations.values()[i] *= mask.values()[i];
    }
}

ForwardCache run_forward(const BiLstmNetwork& net, const EmbeddedSequence& seq, bool train,
                         Rng* dropout_rng) {
    validate_network(net);
    if (seq.valid_length < 1) throw Error("bilstm forward: valid-length 0");
    if (seq.valid_length > seq.rows.rows()) {
        throw Error("bilstm forward: valid-length exceeds sequence rows");
    }
    if (seq.rows.cols() != net.input_dim()) {
        throw Error("bilstm forward: sequence dim " + std::to_string(seq.rows.cols()) +
                    " does not match network input dim " + std::to_string(net.input_dim()));
    }
    bool dropout = train && net.dropout_rate > 0.0;
    if (dropout && !dropout_rng) throw Error("bilstm forward: dropout requires an rng");

    int length = seq.valid_length;
    int hidden = net.hidden_dim();
    ForwardCache cache;
    cache.valid_length = length;
    cache.layers.resize(net.layers.size());

    Matrix current(length, net.input_dim());
    for (int t = 0; t < length; ++t) {
        std::copy(seq.rows.row(t), seq.rows.row(t) + seq.rows.cols(), current.row(t));
    }

    for (int l = 0; l < net.num_layers(); ++l) {
        LayerCache& lc = cache.layers[l];
        lc.input = std::move(current);
        if (dropout) apply_dropout(lc.input, lc.input_mask, net.dropout_rate, *dropout_rng);
        scan_direction(net.layers[l].forward, lc.input, false, lc.fw);
        scan_direction(net.layers[l].backward, lc.input, true, lc.bw);
        if (l + 1 < net.num_layers()) {
            current = Matrix(length, 2 * hidden);
            for (int t = 0; t < length; ++t) {
                std::copy(lc.fw.hidden[t].begin(), lc.fw.hidden[t].end(), current.row(t));
                std::copy(lc.bw.hidden[t].begin(), lc.bw.hidden[t].end(), current.row(t) + hidden);
            }
        }
    }

    const LayerCache& top = cache.layers.back();
    cache.readout.resize(2 * hidden);
    std::copy(top.fw.hidden[length - 1].begin(), top.fw.hidden[length - 1].end(),
              cache.readout.begin());
    std::copy(top.bw.hidden[0].begin(), top.bw.hidden[0].end(), cache.readout.begin() + hidden);
    if (dropout) {
        double keep_scale = 1.0 / (1.0 - net.dropout_rate);
        cache.readout_mask.resize(cache.readout.size());
        for (std::size_t j = 0; j < cache.readout.size(); ++j) {
            cache.readout_mask[j] = dropout_rng->next_double() < net.dropout_rate ? 0.0 : keep_scale;
            cache.readout[j] *= cache.readout_mask[j];
        }
    }

    double z = net.head_bias.at(0, 0);
    for (int j = 0; j < 2 * hidden; ++j) z += cache.readout[j] * net.head_weights.at(j, 0);
    if (!std::isfinite(z)) throw Error("bilstm forward: non-finite activation");
    cache.pre_activation = z;
    cache.score = sigmoid(z);
    return cache;
}

// BPTT over one direction. d_out holds gradients w.r.t. this layer's raw
// per-position outputs; this direction reads columns [col_offset,
// col_offset+hidden). Parameter gradients land in gw_in/gw_rec/gbias and
// input gradients accumulate into d_input.
void bptt_direction(const LstmCellParams& p, const DirectionCache& dc, const Matrix& input,
                    bool reverse, const Matrix& d_out, int col_offset, Matrix* gw_in,
                    Matrix* gw_rec, Matrix* gbias, Matrix& d_input) {
    int length = input.rows();
    int in_dim = input.cols();
    int hidden = p.w_in[0].cols();
    std::vector<double> dh_carry(hidden, 0.0);
    std::vector<double> dc_carry(hidden, 0.0);
    std::array<std::vector<double>, 4> da;
    for (auto& v : da) v.resize(hidden);

    for (int step = length - 1; step >= 0; --step) {
        int t = reverse ? length - 1 - step : step;
        bool has_prev = step > 0;
        int prev_t = reverse ? t + 1 : t - 1;

        for (int j = 0; j < hidden; ++j) {
            double gi = dc.gates[t][kGateInput][j];
            double gf = dc.gates[t][kGateForget][j];
            double gc = dc.gates[t][kGateCandidate][j];
            double go = dc.gates[t][kGateOutput][j];
            double tc = dc.tanh_cell[t][j];
            double dh = d_out.at(t, col_offset + j) + dh_carry[j];
            double d_go = dh * tc;
            double d_c = dh * go * (1.0 - tc * tc) + dc_carry[j];
            double prev_c = has_prev ? dc.cell[prev_t][j] : 0.0;
            da[kGateInput][j] = d_c * gc * gi * (1.0 - gi);
            da[kGateForget][j] = d_c * prev_c * gf * (1.0 - gf);
            da[kGateCandidate][j] = d_c * gi * (1.0 - gc * gc);
            da[kGateOutput][j] = d_go * go * (1.0 - go);
            dc_carry[j] = d_c * gf;
        }

        const double* x = input.row(t);
        const double* h_prev = has_prev ? dc.hidden[prev_t].data() : nullptr;
        for (int g = 0; g < 4; ++g) {
            kernels::outer_accum(x, da[g].data(), gw_in[g].data(), in_dim, hidden, 1.0);
            if (has_prev) {
                kernels::outer_accum(h_prev, da[g].data(), gw_rec[g].data(), hidden, hidden, 1.0);
            }
            for (int j = 0; j < hidden; ++j) gbias[g].at(0, j) += da[g][j];
        }

        std::fill(dh_carry.begin(), dh_carry.end(), 0.0);
        for (int g = 0; g < 4; ++g) {
            for (int k = 0; k < hidden; ++k) {
                double sum = 0.0;
                const double* row = p.w_rec[g].row(k);
                for (int j = 0; j < hidden; ++j) sum += row[j] * da[g][j];
                dh_carry[k] += sum;
            }
            double* dx = d_input.row(t);
            for (int k = 0; k < in_dim; ++k) {
                double sum = 0.0;
                const double* row = p.w_in[g].row(k);
                for (int j = 0; j < hidden; ++j) sum += row[j] * da[g][j];
                dx[k] += sum;
            }
        }
    }
}

}  // namespace

double forward_infer(const BiLstmNetwork& net, const EmbeddedSequence& seq) {
    return run_forward(net, seq, false, nullptr).score;
}

ForwardCache forward_train(const BiLstmNetwork& net, const EmbeddedSequence& seq,
                           Rng* dropout_rng) {
    return run_forward(net, seq, true, dropout_rng);
}

std::vector<Matrix> backward(const BiLstmNetwork& net, const ForwardCache& cache, double dscore) {
    validate_network(net);
    int hidden = net.hidden_dim();
    int length = cache.valid_length;
    if (cache.layers.size() != net.layers.size() || length < 1 ||
        cache.readout.size() != static_cast<std::size_t>(2 * hidden) ||
        cache.layers[0].input.rows() != length) {
        throw Error("bilstm backward: cache does not match network");
    }

    std::vector<Matrix> grads;
    grads.reserve(net.layers.size() * 2 * kMatricesPerDirection + 2);
    for (const BiLstmLayer& layer : net.layers) {
        for (const LstmCellParams* cell : {&layer.forward, &layer.backward}) {
            for (int g = 0; g < 4; ++g) grads.emplace_back(cell->w_in[g].rows(), cell->w_in[g].cols());
            for (int g = 0; g < 4; ++g) grads.emplace_back(hidden, hidden);
            for (int g = 0; g < 4; ++g) grads.emplace_back(1, hidden);
        }
    }
    grads.emplace_back(2 * hidden, 1);
    grads.emplace_back(1, 1);
    Matrix& grad_head_w = grads[grads.size() - 2];
    Matrix& grad_head_b = grads[grads.size() - 1];

    double dz = dscore * sigmoid_prime_from_value(cache.score);
    grad_head_b.at(0, 0) = dz;
    std::vector<double> d_readout(2 * hidden);
    for (int j = 0; j < 2 * hidden; ++j) {
        grad_head_w.at(j, 0) = dz * cache.readout[j];
        d_readout[j] = dz * net.head_weights.at(j, 0);
    }
    if (!cache.readout_mask.empty()) {
        for (int j = 0; j < 2 * hidden; ++j) d_readout[j] *= cache.readout_mask[j];
    }

    Matrix d_out(length, 2 * hidden);
    for (int j = 0; j < hidden; ++j) {
        d_out.at(length - 1, j) = d_readout[j];
        d_out.at(0, hidden + j) = d_readout[hidden + j];
    }

    for (int l = net.num_layers() - 1; l >= 0; --l) {
        const LayerCache& lc = cache.layers[l];
        int base = l * 2 * kMatricesPerDirection;
        Matrix d_input(length, lc.input.cols());
        bptt_direction(net.layers[l].forward, lc.fw, lc.input, false, d_out, 0, &grads[base],
                       &grads[base + 4], &grads[base + 8], d_input);
        int bw_base = base + kMatricesPerDirection;
        bptt_direction(net.layers[l].backward, lc.bw, lc.input, true, d_out, hidden,
                       &grads[bw_base], &grads[bw_base + 4], &grads[bw_base + 8], d_input);
        if (l > 0) {
            if (!lc.input_mask.values().empty()) {
                for (std::size_t i = 0; i < d_input.size(); ++i) {
                    d_input.values()[i] *= lc.input_mask.values()[i];
                }
            }
            d_out = std::move(d_input);
        }
    }
    return grads;
}

void TrainConfig::validate() const {
    if (epochs < 0) throw Error("bilstm: epochs must be non-negative");
    if (batch_size < 1) throw Error("bilstm: batch_size must be positive");
    if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
        throw Error("bilstm: dropout_rate must be in [0, 1)");
    }
    if (!(learning_rate > 0.0)) throw Error("bilstm: learning_rate must be positive");
    if (clip_norm < 0.0) throw Error("bilstm: clip_norm must be non-negative");
}

std::string TrainConfig::digest() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "bilstm;epochs=%d;batch=%d;dropout=%.17g;lr=%.17g;clip=%.17g",
                  epochs, batch_size, dropout_rate, learning_rate, clip_norm);
    return to_hex(fnv1a64(buf));
}

TrainHistory fit(BiLstmNetwork& net, const std::vector<TrainSample>& train,
                 const std::vector<TrainSample>& validation, const TrainConfig& config) {
    config.validate();
    validate_network(net);
    if (train.empty()) throw Error("bilstm fit: empty training set");
    net.dropout_rate = config.dropout_rate;

    int n = static_cast<int>(train.size());
    std::vector<Matrix*> refs = parameter_refs(net);
    std::vector<Matrix> shapes;
    shapes.reserve(refs.size());
    for (const Matrix* m : refs) shapes.emplace_back(m->rows(), m->cols());
    AdamState adam = AdamState::for_params(shapes, config.learning_rate);

    Rng shuffle_rng(config.seed, 1);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    // Per-sample dropout streams depend only on (seed, epoch, sample index),
    // never on thread assignment.
    auto dropout_stream = [&](int epoch, int sample_index) {
        return 2ull + static_cast<std::uint64_t>(epoch) * static_cast<std::uint64_t>(n) +
               static_cast<std::uint64_t>(sample_index);
    };

    constexpr int kChunk = 16;
    TrainHistory history;
    history.epochs.reserve(config.epochs);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double squared_error_sum = 0.0;

        for (int start = 0, batch_index = 0; start < n; start += config.batch_size, ++batch_index) {
            int count = std::min(config.batch_size, n - start);
            std::vector<Matrix> batch_grads = shapes;
            double batch_loss_sum = 0.0;

            for (int chunk_off = 0; chunk_off < count; chunk_off += kChunk) {
                int chunk_n = std::min(kChunk, count - chunk_off);
                std::vector<std::vector<Matrix>> sample_grads(chunk_n);
                std::vector<double> sample_loss(chunk_n, 0.0);
                std::string failure;

#pragma omp parallel for schedule(static)
                for (int s = 0; s < chunk_n; ++s) {
                    int sample_index = order[start + chunk_off + s];
                    const TrainSample& sample = train[sample_index];
                    try {
                        Rng dropout_rng(config.seed, dropout_stream(epoch, sample_index));
                        ForwardCache cache = forward_train(
                            net, sample.seq, net.dropout_rate > 0.0 ? &dropout_rng : nullptr);
                        double diff = cache.score - static_cast<double>(sample.label);
                        sample_loss[s] = diff * diff;
                        sample_grads[s] = backward(net, cache, 2.0 * diff);
                    } catch (const std::exception& e) {
#pragma omp critical
                        if (failure.empty()) failure = e.what();
                    }
                }
                if (!failure.empty()) {
                    throw Error("bilstm fit: epoch " + std::to_string(epoch) + ", batch " +
                                std::to_string(batch_index) + ": " + failure);
                }
                for (int s = 0; s < chunk_n; ++s) {
                    for (std::size_t i = 0; i < batch_grads.size(); ++i) {
                        batch_grads[i] += sample_grads[s][i];
                    }
                    batch_loss_sum += sample_loss[s];
                }
            }

            double batch_loss = batch_loss_sum / count;
            if (!std::isfinite(batch_loss)) {
                throw Error("bilstm fit: non-finite loss at epoch " + std::to_string(epoch) +
                            ", batch " + std::to_string(batch_index));
            }
            double scale = 1.0 / count;
            for (Matrix& g : batch_grads) g *= scale;
            if (config.clip_norm > 0.0) {
                double norm_sq = 0.0;
                for (const Matrix& g : batch_grads) {
                    for (double v : g.values()) norm_sq += v * v;
                }
                double norm = std::sqrt(norm_sq);
                if (norm > config.clip_norm) {
                    double clip_scale = config.clip_norm / norm;
                    for (Matrix& g : batch_grads) g *= clip_scale;
                }
            }
            adam_step(refs, batch_grads, adam);
            squared_error_sum += batch_loss_sum;
        }

        EpochStats stats;
        stats.train_loss = squared_error_sum / n;
        if (!validation.empty()) {
            int correct = 0;
            for (const TrainSample& sample : validation) {
                double score = forward_infer(net, sample.seq);
                int label = score >= 0.5 ? 1 : 0;
                if (label == sample.label) ++correct;
            }
            stats.validation_accuracy = static_cast<double>(correct) / validation.size();
        }
        history.epochs.push_back(stats);
    }
    return history;
}

Prediction predict(const BiLstmNetwork& net, const TokenStream& stream,
                   const EmbeddingModel& embedding, double threshold, int max_len) {
    validate_network(net);
    if (embedding.input_vectors.cols() != net.input_dim()) {
        throw Error("bilstm predict: embedding dim " +
                    std::to_string(embedding.input_vectors.cols()) +
                    " does not match network input dim " + std::to_string(net.input_dim()));
    }
    EmbeddedSequence seq = embed_sequence(stream, embedding, max_len);
    Prediction p;
    p.score = forward_infer(net, seq);
    p.label = p.score >= threshold ? 1 : 0;
    return p;
}

namespace {

nlohmann::ordered_json cell_to_json(const LstmCellParams& cell) {
    nlohmann::ordered_json j;
    for (const char* key : {"w_in", "w_rec", "bias"}) {
        j[key] = nlohmann::ordered_json::array();
    }
    for (int g = 0; g < 4; ++g) j["w_in"].push_back(detail::matrix_to_json(cell.w_in[g]));
    for (int g = 0; g < 4; ++g) j["w_rec"].push_back(detail::matrix_to_json(cell.w_rec[g]));
    for (int g = 0; g < 4; ++g) j["bias"].push_back(detail::matrix_to_json(cell.bias[g]));
    return j;
}

LstmCellParams cell_from_json(const nlohmann::json& j) {
    LstmCellParams cell;
    for (int g = 0; g < 4; ++g) {
        cell.w_in[g] = detail::matrix_from_json(j.at("w_in").at(g), "bilstm w_in");
        cell.w_rec[g] = detail::matrix_from_json(j.at("w_rec").at(g), "bilstm w_rec");
        cell.bias[g] = detail::matrix_from_json(j.at("bias").at(g), "bilstm bias");
    }
    return cell;
}

}  // namespace

void save_bilstm(const BiLstmNetwork& net, const ModelMeta& meta, const std::string& path) {
    validate_network(net);
    nlohmann::ordered_json j = detail::model_envelope(meta, "bilstm");
    j["config"] = {{"input_dim", net.input_dim()},
                   {"hidden", net.hidden_dim()},
                   {"num_layers", net.num_layers()},
                   {"dropout_rate", net.dropout_rate}};
    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (const BiLstmLayer& layer : net.layers) {
        layers.push_back({{"forward", cell_to_json(layer.forward)},
                          {"backward", cell_to_json(layer.backward)}});
    }
    j["parameters"] = {{"layers", std::move(layers)},
                       {"head_weights", detail::matrix_to_json(net.head_weights)},
                       {"head_bias", detail::matrix_to_json(net.head_bias)}};
    write_file(path, j.dump(2) + "\n");
}

BiLstmNetwork load_bilstm(const std::string& path, ModelMeta* meta) {
    nlohmann::json j = detail::load_model_json(path, "bilstm", meta);
    BiLstmNetwork net;
    try {
        net.dropout_rate = j.at("config").at("dropout_rate").get<double>();
        const auto& p = j.at("parameters");
        for (const auto& jl : p.at("layers")) {
            BiLstmLayer layer;
            layer.forward = cell_from_json(jl.at("forward"));
            layer.backward = cell_from_json(jl.at("backward"));
            net.layers.push_back(std::move(layer));
        }
        net.head_weights = detail::matrix_from_json(p.at("head_weights"), "bilstm head_weights");
        net.head_bias = detail::matrix_from_json(p.at("head_bias"), "bilstm head_bias");
    } catch (const nlohmann::json::exception& e) {
        throw Error("model file " + path + ": " + e.what());
    }
    validate_network(net);
    return net;
}

}  // namespace vulnlex
