#include "vulnlex/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string_view>

#include "json.hpp"
#include "vulnlex/numerics.hpp"
#include "vulnlex/rng.hpp"
#include "vulnlex/util.hpp"

namespace vulnlex {

void Word2vecConfig::validate() const {
    if (vector_dim < 1) throw Error("word2vec: vector_dim must be positive");
    if (min_count < 1) throw Error("word2vec: min_count must be positive");
    if (iterations < 0) throw Error("word2vec: iterations must be non-negative");
    if (window < 1) throw Error("word2vec: window must be positive");
    if (negatives_per_positive < 0) throw Error("word2vec: negatives_per_positive must be non-negative");
    if (!(initial_learning_rate > 0.0)) throw Error("word2vec: initial_learning_rate must be positive");
}

std::string Word2vecConfig::digest() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "w2v;dim=%d;min_count=%d;iterations=%d;window=%d;neg=%d;lr=%.17g",
                  vector_dim, min_count, iterations, window, negatives_per_positive,
                  initial_learning_rate);
    return to_hex(fnv1a64(buf));
}

int Vocabulary::find(const std::string& lexeme) const {
    auto it = index_of.find(lexeme);
    return it == index_of.end() ? -1 : it->second;
}

Vocabulary build_vocab(const std::vector<TokenStream>& corpus, const Word2vecConfig& config) {
    if (corpus.empty()) throw Error("build_vocab: empty corpus");
    std::map<std::string, std::int64_t> counts;
    for (const TokenStream& stream : corpus) {
        for (const Token& t : stream.tokens) ++counts[t.lexeme];
    }
    Vocabulary vocab;
    for (const auto& [lexeme, freq] : counts) {
        if (freq >= config.min_count) vocab.entries.push_back({lexeme, freq});
    }
    if (vocab.entries.empty()) {
        throw Error("build_vocab: vocabulary empty after filtering (min_count=" +
                    std::to_string(config.min_count) + ")");
    }
    std::sort(vocab.entries.begin(), vocab.entries.end(), [](const VocabEntry& a, const VocabEntry& b) {
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        return a.lexeme < b.lexeme;
    });
    for (std::size_t i = 0; i < vocab.entries.size(); ++i) {
        vocab.index_of.emplace(vocab.entries[i].lexeme, static_cast<int>(i));
    }
    return vocab;
}

std::vector<std::pair<int, int>> generate_pairs(const TokenStream& stream,
                                                const Vocabulary& vocab, int window) {
    std::vector<std::pair<int, int>> pairs;
    const auto& tokens = stream.tokens;
    int n = static_cast<int>(tokens.size());
    for (int i = 0; i < n; ++i) {
        int center = vocab.find(tokens[i].lexeme);
        if (center < 0) continue;
        int lo = std::max(0, i - window);
        int hi = std::min(n - 1, i + window);
        for (int j = lo; j <= hi; ++j) {
            if (j == i) continue;
            int context = vocab.find(tokens[j].lexeme);
            if (context < 0) continue;
            pairs.emplace_back(center, context);
        }
    }
    return pairs;
}

PairGradients pair_loss_and_grads(const Matrix& input_vectors, const Matrix& output_vectors,
                                  int center, int context, const std::vector<int>& negatives) {
    int dim = input_vectors.cols();
    const double* vc = input_vectors.row(center);
    PairGradients g;
    g.d_center.assign(dim, 0.0);
    g.d_outputs.reserve(negatives.size() + 1);

    auto accumulate = [&](int row, double sign) {
        // sign +1 for the positive pair, -1 for negatives: the per-draw loss
        // is softplus(-sign * dot) and d loss / d dot = sigmoid(dot) - (sign>0).
        const double* u = output_vectors.row(row);
        double dot = 0.0;
        for (int d = 0; d < dim; ++d) dot += u[d] * vc[d];
        g.loss += softplus(-sign * dot);
        double grad = sigmoid(dot) - (sign > 0.0 ? 1.0 : 0.0);
        std::vector<double> du(dim);
        for (int d = 0; d < dim; ++d) {
            du[d] = grad * vc[d];
            g.d_center[d] += grad * u[d];
        }
        g.d_outputs.emplace_back(row, std::move(du));
    };

    accumulate(context, 1.0);
    for (int neg : negatives) accumulate(neg, -1.0);
    return g;
}

namespace {

// Draws from the unigram distribution raised to 3/4 via its exact cumulative
// weight table.
class NegativeSampler {
public:
    NegativeSampler(const Vocabulary& vocab, Rng& rng) : rng_(rng) {
        cumulative_.reserve(vocab.entries.size());
        double total = 0.0;
        for (const VocabEntry& e : vocab.entries) {
            total += std::pow(static_cast<double>(e.frequency), 0.75);
            cumulative_.push_back(total);
        }
    }

    int draw() {
        double u = rng_.next_double() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) --it;
        return static_cast<int>(it - cumulative_.begin());
    }

private:
    Rng& rng_;
    std::vector<double> cumulative_;
};

}  // namespace

EmbeddingModel train(const std::vector<TokenStream>& corpus, const Word2vecConfig& config) {
    config.validate();
    EmbeddingModel model;
    model.config = config;
    model.vocabulary = build_vocab(corpus, config);
    int vsize = model.vocabulary.size();
    int dim = config.vector_dim;

    Rng init_rng(config.seed, 0);
    model.input_vectors = Matrix(vsize, dim);
    double half = 0.5 / dim;
    for (double& v : model.input_vectors.values()) v = init_rng.uniform(-half, half);
    model.output_vectors = Matrix(vsize, dim);

    std::vector<std::pair<int, int>> pairs;
    for (const TokenStream& stream : corpus) {
        auto p = generate_pairs(stream, model.vocabulary, config.window);
        pairs.insert(pairs.end(), p.begin(), p.end());
    }
    if (pairs.empty() || config.iterations == 0) return model;

    Rng neg_rng(config.seed, 1);
    NegativeSampler sampler(model.vocabulary, neg_rng);
    double initial_lr = config.initial_learning_rate;
    double final_lr = 1e-4 * initial_lr;
    double total_updates = static_cast<double>(config.iterations) * pairs.size();
    long long update = 0;
    std::vector<int> negatives;

    for (int iter = 0; iter < config.iterations; ++iter) {
        double epoch_loss = 0.0;
        for (const auto& [center, context] : pairs) {
            double progress = static_cast<double>(update) / total_updates;
            double lr = initial_lr + (final_lr - initial_lr) * progress;
            negatives.clear();
            if (vsize > 1) {
                for (int k = 0; k < config.negatives_per_positive; ++k) {
                    int neg = sampler.draw();
                    while (neg == context) neg = sampler.draw();
                    negatives.push_back(neg);
                }
            }
            PairGradients g =
                pair_loss_and_grads(model.input_vectors, model.output_vectors, center, context, negatives);
            double* vc = model.input_vectors.row(center);
            for (int d = 0; d < dim; ++d) vc[d] -= lr * g.d_center[d];
            for (const auto& [row, du] : g.d_outputs) {
                double* u = model.output_vectors.row(row);
                for (int d = 0; d < dim; ++d) u[d] -= lr * du[d];
            }
            epoch_loss += g.loss;
            ++update;
        }
        double average = epoch_loss / static_cast<double>(pairs.size());
        if (!std::isfinite(average)) {
            throw Error("word2vec: non-finite loss at iteration " + std::to_string(iter));
        }
        model.final_average_loss = average;
    }
    return model;
}

EmbeddedSequence embed_sequence(const TokenStream& stream, const EmbeddingModel& model,
                                int max_len) {
    if (max_len < 1) throw Error("embed_sequence: max_len must be positive");
    int dim = model.input_vectors.cols();
    EmbeddedSequence out;
    out.rows = Matrix(max_len, dim);
    int n = static_cast<int>(stream.tokens.size());
    int start = n > max_len ? n - max_len : 0;
    out.valid_length = n - start;
    for (int i = start; i < n; ++i) {
        int idx = model.vocabulary.find(stream.tokens[i].lexeme);
        if (idx < 0) continue;
        const double* src = model.input_vectors.row(idx);
        double* dst = out.rows.row(i - start);
        std::copy(src, src + dim, dst);
    }
    return out;
}

std::vector<double> pool_mean(const TokenStream& stream, const EmbeddingModel& model) {
    int dim = model.input_vectors.cols();
    std::vector<double> mean(dim, 0.0);
    int count = 0;
    for (const Token& t : stream.tokens) {
        int idx = model.vocabulary.find(t.lexeme);
        if (idx < 0) continue;
        const double* v = model.input_vectors.row(idx);
        for (int d = 0; d < dim; ++d) mean[d] += v[d];
        ++count;
    }
    if (count > 0) {
        for (double& v : mean) v /= count;
    }
    return mean;
}

std::string embedding_sidecar_path(const std::string& path) { return path + ".meta.json"; }

void save_embedding(const EmbeddingModel& model, const std::string& path) {
    const Word2vecConfig& cfg = model.config;
    std::string text;
    text += std::to_string(model.vocabulary.size());
    text += ' ';
    text += std::to_string(cfg.vector_dim);
    text += '\n';
    char buf[64];
    for (int i = 0; i < model.vocabulary.size(); ++i) {
        text += percent_encode(model.vocabulary.entries[i].lexeme);
        const double* v = model.input_vectors.row(i);
        for (int d = 0; d < cfg.vector_dim; ++d) {
            std::snprintf(buf, sizeof(buf), " %.9g", v[d]);
            text += buf;
        }
        text += '\n';
    }
    write_file(path, text);

    nlohmann::ordered_json meta;
    meta["toolkit_version"] = std::string(kToolkitVersion);
    meta["seed"] = cfg.seed;
    meta["config_digest"] = cfg.digest();
    meta["config"] = {{"vector_dim", cfg.vector_dim},
                      {"min_count", cfg.min_count},
                      {"iterations", cfg.iterations},
                      {"window", cfg.window},
                      {"negatives_per_positive", cfg.negatives_per_positive},
                      {"initial_learning_rate", cfg.initial_learning_rate}};
    meta["vocab_size"] = model.vocabulary.size();
    meta["final_average_loss"] = model.final_average_loss;
    nlohmann::ordered_json freqs = nlohmann::ordered_json::array();
    for (const VocabEntry& e : model.vocabulary.entries) freqs.push_back(e.frequency);
    meta["frequencies"] = std::move(freqs);
    write_file(embedding_sidecar_path(path), meta.dump(2) + "\n");
}

EmbeddingModel load_embedding(const std::string& path) {
    std::string text = read_file(path);
    EmbeddingModel model;

    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(read_file(embedding_sidecar_path(path)));
        Word2vecConfig& cfg = model.config;
        const auto& jc = meta.at("config");
        cfg.vector_dim = jc.at("vector_dim").get<int>();
        cfg.min_count = jc.at("min_count").get<int>();
        cfg.iterations = jc.at("iterations").get<int>();
        cfg.window = jc.at("window").get<int>();
        cfg.negatives_per_positive = jc.at("negatives_per_positive").get<int>();
        cfg.initial_learning_rate = jc.at("initial_learning_rate").get<double>();
        cfg.seed = meta.at("seed").get<std::uint64_t>();
        model.final_average_loss = meta.at("final_average_loss").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("load_embedding: bad sidecar for " + path + ": " + e.what());
    }

    std::size_t pos = 0;
    auto next_line = [&]() -> std::string_view {
        if (pos >= text.size()) throw Error("load_embedding: truncated file " + path);
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line(text.data() + pos, end - pos);
        pos = end < text.size() ? end + 1 : end;
        return line;
    };

    int vsize = 0;
    int dim = 0;
    {
        std::string header(next_line());
        if (std::sscanf(header.c_str(), "%d %d", &vsize, &dim) != 2 || vsize < 1 || dim < 1) {
            throw Error("load_embedding: malformed header in " + path);
        }
    }
    if (dim != model.config.vector_dim) {
        throw Error("load_embedding: header dim disagrees with sidecar for " + path);
    }
    std::vector<std::int64_t> freqs;
    try {
        freqs = meta.at("frequencies").get<std::vector<std::int64_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("load_embedding: bad sidecar for " + path + ": " + e.what());
    }
    if (static_cast<int>(freqs.size()) != vsize) {
        throw Error("load_embedding: sidecar frequency count disagrees with header for " + path);
    }

    model.input_vectors = Matrix(vsize, dim);
    for (int i = 0; i < vsize; ++i) {
        std::string line(next_line());
        std::size_t sp = line.find(' ');
        if (sp == std::string::npos) {
            throw Error("load_embedding: malformed line " + std::to_string(i + 2) + " in " + path);
        }
        model.vocabulary.entries.push_back({percent_decode(line.substr(0, sp)), freqs[i]});
        const char* cursor = line.c_str() + sp;
        double* row = model.input_vectors.row(i);
        for (int d = 0; d < dim; ++d) {
            char* after = nullptr;
            row[d] = std::strtod(cursor, &after);
            if (after == cursor) {
                throw Error("load_embedding: malformed line " + std::to_string(i + 2) + " in " + path);
            }
            cursor = after;
        }
    }
    for (std::size_t i = 0; i < model.vocabulary.entries.size(); ++i) {
        model.vocabulary.index_of.emplace(model.vocabulary.entries[i].lexeme, static_cast<int>(i));
    }
    return model;
}

}  // namespace vulnlex
