#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vulnlex/lexer.hpp"
#include "vulnlex/matrix.hpp"

namespace vulnlex {

struct Word2vecConfig {
    int vector_dim = 300;
    int min_count = 10;
    int iterations = 200;
    int window = 5;
    int negatives_per_positive = 5;
    double initial_learning_rate = 0.025;
    std::uint64_t seed = 0;

    void validate() const;
    // Hex digest over every field except the seed; artifacts store both.
    std::string digest() const;
};

struct VocabEntry {
    std::string lexeme;
    std::int64_t frequency = 0;
};

// Indexed by descending corpus frequency, ties broken by lexeme order.
struct Vocabulary {
    std::vector<VocabEntry> entries;
    std::unordered_map<std::string, int> index_of;

    int size() const { return static_cast<int>(entries.size()); }
    // Index of a lexeme, -1 if absent.
    int find(const std::string& lexeme) const;
};

struct EmbeddingModel {
    Vocabulary vocabulary;
    Matrix input_vectors;   // |V| x dim
    Matrix output_vectors;  // |V| x dim; empty on models loaded from disk
    Word2vecConfig config;
    double final_average_loss = 0.0;
};

Vocabulary build_vocab(const std::vector<TokenStream>& corpus, const Word2vecConfig& config);

// Skip-gram (center, context) vocabulary-index pairs, in position order.
// Distances are measured over original token positions, so out-of-vocabulary
// tokens contribute no pairs but still occupy positions.
std::vector<std::pair<int, int>> generate_pairs(const TokenStream& stream,
                                                const Vocabulary& vocab, int window);

// Loss and gradients for one positive pair with explicit negative indices,
// sparse in the rows they touch. Exposed so the analytic gradients can be
// checked against finite differences.
struct PairGradients {
    double loss = 0.0;
    std::vector<double> d_center;  // w.r.t. input_vectors row `center`
    std::vector<std::pair<int, std::vector<double>>> d_outputs;  // context first, then negatives
};

PairGradients pair_loss_and_grads(const Matrix& input_vectors, const Matrix& output_vectors,
                                  int center, int context, const std::vector<int>& negatives);

EmbeddingModel train(const std::vector<TokenStream>& corpus, const Word2vecConfig& config);

struct EmbeddedSequence {
    Matrix rows;  // max_len x dim
    int valid_length = 0;
};

// In-vocabulary tokens map to their input vector, out-of-vocabulary tokens to
// the zero vector. Streams longer than max_len keep the last max_len tokens;
// shorter streams are zero-padded at the end.
EmbeddedSequence embed_sequence(const TokenStream& stream, const EmbeddingModel& model,
                                int max_len);

// Mean of the in-vocabulary token vectors; zero vector if there are none.
std::vector<double> pool_mean(const TokenStream& stream, const EmbeddingModel& model);

std::string embedding_sidecar_path(const std::string& path);

// Text format: header "<vocab_size> <dim>", then one line per token with the
// percent-encoded lexeme and 9-significant-digit components. The sidecar JSON
// carries config, seed, frequencies, and the toolkit version.
void save_embedding(const EmbeddingModel& model, const std::string& path);
EmbeddingModel load_embedding(const std::string& path);

}  // namespace vulnlex
