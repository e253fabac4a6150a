#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vulnlex/baselines.hpp"
#include "vulnlex/bilstm.hpp"
#include "vulnlex/corpus.hpp"
#include "vulnlex/embedding.hpp"
#include "vulnlex/evaluation.hpp"
#include "vulnlex/lexer.hpp"
#include "vulnlex/model_io.hpp"
#include "vulnlex/util.hpp"

namespace fs = std::filesystem;
using namespace vulnlex;

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error("invalid seed '" + text + "'");
    }
}

// Precedence: --seed flag, then config file (both land in the bound string),
// then VULNLEX_SEED, then 0.
std::uint64_t resolve_seed(const std::string& flag_value) {
    if (!flag_value.empty()) return parse_seed(flag_value);
    if (const char* env = std::getenv("VULNLEX_SEED"); env && *env) return parse_seed(env);
    return 0;
}

std::vector<LabeledSample> select_class(std::vector<LabeledSample> samples,
                                        const std::string& class_flag, VulnClass* selected) {
    if (!class_flag.empty()) {
        VulnClass wanted = parse_vuln_class(class_flag);
        std::erase_if(samples, [&](const LabeledSample& s) { return s.vuln_class != wanted; });
        if (samples.empty()) {
            throw Error("dataset has no samples of class " + class_flag);
        }
        if (selected) *selected = wanted;
        return samples;
    }
    if (samples.empty()) throw Error("dataset has no samples");
    for (const LabeledSample& s : samples) {
        if (s.vuln_class != samples.front().vuln_class) {
            throw Error("dataset contains multiple vulnerability classes; pass --class");
        }
    }
    if (selected) *selected = samples.front().vuln_class;
    return samples;
}

TokenStream tokenize_sample(const LabeledSample& s) {
    try {
        return tokenize(s.code, s.id);
    } catch (const Error& e) {
        throw Error("sample " + s.id + ": " + e.what());
    }
}

int default_tree_depth(VulnClass c) {
    return (c == VulnClass::Xss || c == VulnClass::OpenRedirect) ? 2 : 5;
}

struct EmbedOpts {
    std::string dataset;
    std::string vuln_class;
    std::string out;
    std::string seed_text;
    Word2vecConfig config;
};

int cmd_embed(const EmbedOpts& o) {
    std::vector<LabeledSample> samples = load_dataset(o.dataset);
    if (!o.vuln_class.empty()) {
        VulnClass wanted = parse_vuln_class(o.vuln_class);
        std::erase_if(samples, [&](const LabeledSample& s) { return s.vuln_class != wanted; });
    }
    if (samples.empty()) throw Error("empty corpus");

    std::vector<TokenStream> corpus;
    corpus.reserve(samples.size());
    for (const LabeledSample& s : samples) corpus.push_back(tokenize_sample(s));

    Word2vecConfig config = o.config;
    config.seed = resolve_seed(o.seed_text);
    EmbeddingModel model = train(corpus, config);
    try {
        save_embedding(model, o.out);
    } catch (...) {
        std::error_code ec;
        fs::remove(o.out, ec);
        fs::remove(embedding_sidecar_path(o.out), ec);
        throw;
    }
    std::cout << "vocabulary size: " << model.vocabulary.size() << "\n";
    std::cout << "final average loss: " << fmt_g(model.final_average_loss) << "\n";
    return 0;
}

struct TrainOpts {
    std::string dataset;
    std::string vuln_class;
    std::string model_kind;
    std::string embedding;
    std::string out;
    std::string seed_text;
    double train_fraction = 0.7;
    double test_fraction = 0.15;
    double validation_fraction = 0.15;
    int max_len = 200;
    int max_depth = -1;  // -1 = per-class default
    int epochs = 50;
    int batch_size = 128;
    double dropout = 0.2;
    int hidden = 50;
    int layers = 3;
    double learning_rate = 0.001;
    int mlp_max_iter = 300;
};

void write_history(const std::string& path, const char* step_key,
                   const std::vector<double>& losses) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < losses.size(); ++i) {
        j.push_back({{step_key, i + 1}, {"loss", losses[i]}});
    }
    write_file(path, j.dump(2) + "\n");
}

void print_training_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                            VulnClass cls, const std::string& kind) {
    EvaluationReport report;
    report.vuln_class = cls;
    report.model_kind = kind;
    report.partition = "train";
    report.confusion = confusion(scores, labels, 0.5);
    report.scalar_metrics = metrics(report.confusion);
    bool has0 = false;
    bool has1 = false;
    for (int label : labels) (label == 0 ? has0 : has1) = true;
    if (has0 && has1) report.auc = roc(scores, labels).auc;
    std::cout << report_to_text(report);
}

int cmd_train(const TrainOpts& o) {
    std::uint64_t seed = resolve_seed(o.seed_text);
    VulnClass cls = VulnClass::SqlInjection;
    std::vector<LabeledSample> samples = select_class(load_dataset(o.dataset), o.vuln_class, &cls);

    SplitSpec spec{o.train_fraction, o.test_fraction, o.validation_fraction, seed};
    DatasetSplit parts = split(samples, spec);
    EmbeddingModel emb = load_embedding(o.embedding);
    int dim = emb.input_vectors.cols();

    ModelMeta meta;
    meta.seed = seed;
    meta.embedding_checksum = file_checksum(o.embedding);
    meta.vuln_class = std::string(vuln_class_name(cls));
    meta.train_fraction = o.train_fraction;
    meta.test_fraction = o.test_fraction;
    meta.validation_fraction = o.validation_fraction;
    meta.max_len = o.max_len;

    fs::create_directories(o.out);
    std::string stem = o.out + "/" + o.model_kind + "_" + meta.vuln_class;
    std::string model_path = stem + ".model.json";
    std::string history_path = stem + ".history.json";

    std::vector<TokenStream> train_streams;
    std::vector<int> train_labels;
    for (const LabeledSample& s : parts.train) {
        train_streams.push_back(tokenize_sample(s));
        train_labels.push_back(s.label);
    }

    std::vector<double> train_scores;
    if (o.model_kind == "bilstm") {
        std::vector<TrainSample> train_set;
        for (std::size_t i = 0; i < train_streams.size(); ++i) {
            train_set.push_back({embed_sequence(train_streams[i], emb, o.max_len), train_labels[i]});
        }
        std::vector<TrainSample> val_set;
        for (const LabeledSample& s : parts.validation) {
            val_set.push_back({embed_sequence(tokenize_sample(s), emb, o.max_len), s.label});
        }

        BiLstmNetwork net = make_bilstm(dim, o.hidden, o.layers, o.dropout, seed);
        TrainConfig config;
        config.epochs = o.epochs;
        config.batch_size = o.batch_size;
        config.dropout_rate = o.dropout;
        config.learning_rate = o.learning_rate;
        config.seed = seed;
        char digest_src[200];
        std::snprintf(digest_src, sizeof(digest_src), "bilstm;hidden=%d;layers=%d;max_len=%d;train=%s",
                      o.hidden, o.layers, o.max_len, config.digest().c_str());
        meta.config_digest = to_hex(fnv1a64(digest_src));

        TrainHistory history = fit(net, train_set, val_set, config);
        save_bilstm(net, meta, model_path);
        nlohmann::ordered_json jh = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < history.epochs.size(); ++i) {
            jh.push_back({{"epoch", i + 1},
                          {"train_loss", history.epochs[i].train_loss},
                          {"validation_accuracy", history.epochs[i].validation_accuracy}});
        }
        write_file(history_path, jh.dump(2) + "\n");
        for (const TrainSample& s : train_set) train_scores.push_back(forward_infer(net, s.seq));
    } else {
        Matrix features(static_cast<int>(train_streams.size()), dim);
        for (std::size_t i = 0; i < train_streams.size(); ++i) {
            std::vector<double> pooled = pool_mean(train_streams[i], emb);
            std::copy(pooled.begin(), pooled.end(), features.row(static_cast<int>(i)));
        }

        if (o.model_kind == "gnb") {
            meta.config_digest = to_hex(fnv1a64("gnb"));
            GnbModel model = gnb_fit(features, train_labels);
            save_gnb(model, meta, model_path);
            for (int i = 0; i < features.rows(); ++i) {
                train_scores.push_back(gnb_predict(
                    model, std::vector<double>(features.row(i), features.row(i) + dim)));
            }
        } else if (o.model_kind == "tree") {
            int depth = o.max_depth >= 0 ? o.max_depth : default_tree_depth(cls);
            meta.config_digest = to_hex(fnv1a64("tree;max_depth=" + std::to_string(depth)));
            TreeModel model = tree_fit(features, train_labels, depth);
            save_tree(model, meta, model_path);
            for (int i = 0; i < features.rows(); ++i) {
                train_scores.push_back(tree_predict(
                    model, std::vector<double>(features.row(i), features.row(i) + dim)));
            }
        } else if (o.model_kind == "logreg") {
            meta.config_digest = to_hex(fnv1a64("logreg;reg=1"));
            std::vector<double> losses;
            LogRegModel model = logreg_fit(features, train_labels, &losses);
            if (!model.converged) {
                std::cerr << "warning: logistic regression did not converge (final gradient norm "
                          << fmt_g(model.final_gradient_norm) << ")\n";
            }
            save_logreg(model, meta, model_path);
            write_history(history_path, "iteration", losses);
            for (int i = 0; i < features.rows(); ++i) {
                train_scores.push_back(logreg_predict(
                    model, std::vector<double>(features.row(i), features.row(i) + dim)));
            }
        } else if (o.model_kind == "mlp") {
            MlpConfig config;
            config.max_iter = o.mlp_max_iter;
            config.learning_rate = o.learning_rate;
            config.seed = seed;
            char digest_src[200];
            std::snprintf(digest_src, sizeof(digest_src),
                          "mlp;width=%d;max_iter=%d;lr=%.17g;tol=%.17g;no_improve=%d;batch=%d",
                          config.hidden_width, config.max_iter, config.learning_rate, config.tol,
                          config.no_improvement_limit, config.batch_size);
            meta.config_digest = to_hex(fnv1a64(digest_src));
            std::vector<double> losses;
            MlpModel model = mlp_fit(features, train_labels, config, &losses);
            save_mlp(model, meta, model_path);
            write_history(history_path, "epoch", losses);
            for (int i = 0; i < features.rows(); ++i) {
                train_scores.push_back(mlp_predict(
                    model, std::vector<double>(features.row(i), features.row(i) + dim)));
            }
        } else {
            throw Error("unknown model kind '" + o.model_kind + "'");
        }
    }

    std::cout << "wrote " << model_path << "\n";
    print_training_metrics(train_scores, train_labels, cls, o.model_kind);
    return 0;
}

// Scores one sample with whatever model kind the file holds.
struct Scorer {
    std::function<double(const TokenStream&)> score;
    ModelMeta meta;
};

Scorer make_scorer(const std::string& model_path, const EmbeddingModel& emb, double threshold) {
    Scorer scorer;
    scorer.meta = read_model_meta(model_path);
    const std::string& kind = scorer.meta.kind;
    int max_len = scorer.meta.max_len;
    if (kind == "bilstm") {
        auto net = std::make_shared<BiLstmNetwork>(load_bilstm(model_path));
        scorer.score = [&emb, net, threshold, max_len](const TokenStream& stream) {
            return predict(*net, stream, emb, threshold, max_len).score;
        };
        return scorer;
    }
    auto pooled = [&emb](const TokenStream& stream) { return pool_mean(stream, emb); };
    if (kind == "gnb") {
        auto model = std::make_shared<GnbModel>(load_gnb(model_path));
        scorer.score = [model, pooled](const TokenStream& s) { return gnb_predict(*model, pooled(s)); };
    } else if (kind == "tree") {
        auto model = std::make_shared<TreeModel>(load_tree(model_path));
        scorer.score = [model, pooled](const TokenStream& s) { return tree_predict(*model, pooled(s)); };
    } else if (kind == "logreg") {
        auto model = std::make_shared<LogRegModel>(load_logreg(model_path));
        scorer.score = [model, pooled](const TokenStream& s) {
            return logreg_predict(*model, pooled(s));
        };
    } else if (kind == "mlp") {
        auto model = std::make_shared<MlpModel>(load_mlp(model_path));
        scorer.score = [model, pooled](const TokenStream& s) { return mlp_predict(*model, pooled(s)); };
    } else {
        throw Error("model file " + model_path + ": unknown kind '" + kind + "'");
    }
    return scorer;
}

void verify_artifact_chain(const ModelMeta& meta, const std::string& embedding_path,
                           const std::string& seed_text) {
    if (meta.toolkit_version != kToolkitVersion) {
        throw Error("model was written by toolkit version " + meta.toolkit_version +
                    ", this binary is " + std::string(kToolkitVersion));
    }
    std::string checksum = file_checksum(embedding_path);
    if (checksum != meta.embedding_checksum) {
        throw Error("embedding file checksum " + checksum +
                    " does not match the checksum recorded in the model (" +
                    meta.embedding_checksum + "); artifact chain mismatch");
    }
    if (!seed_text.empty() && parse_seed(seed_text) != meta.seed) {
        throw Error("requested seed " + seed_text + " does not match the model's recorded seed " +
                    std::to_string(meta.seed));
    }
}

struct EvaluateOpts {
    std::string model_path;
    std::string dataset;
    std::string embedding;
    std::string partition = "both";
    std::string out = ".";
    std::string seed_text;
    double threshold = 0.5;
};

int cmd_evaluate(const EvaluateOpts& o) {
    EmbeddingModel emb = load_embedding(o.embedding);
    Scorer scorer = make_scorer(o.model_path, emb, o.threshold);
    verify_artifact_chain(scorer.meta, o.embedding, o.seed_text);

    VulnClass cls = parse_vuln_class(scorer.meta.vuln_class);
    std::vector<LabeledSample> samples =
        select_class(load_dataset(o.dataset), scorer.meta.vuln_class, nullptr);
    SplitSpec spec{scorer.meta.train_fraction, scorer.meta.test_fraction,
                   scorer.meta.validation_fraction, scorer.meta.seed};
    DatasetSplit parts = split(samples, spec);

    std::vector<std::pair<std::string, const std::vector<LabeledSample>*>> partitions;
    if (o.partition == "test" || o.partition == "both") partitions.push_back({"test", &parts.test});
    if (o.partition == "validation" || o.partition == "both") {
        partitions.push_back({"validation", &parts.validation});
    }

    fs::create_directories(o.out);
    for (const auto& [name, part] : partitions) {
        if (part->empty()) throw Error("partition '" + name + "' is empty");
        std::vector<double> scores;
        std::vector<int> labels;
        for (const LabeledSample& s : *part) {
            scores.push_back(scorer.score(tokenize_sample(s)));
            labels.push_back(s.label);
        }
        EvaluationReport report;
        report.vuln_class = cls;
        report.model_kind = scorer.meta.kind;
        report.partition = name;
        report.confusion = confusion(scores, labels, o.threshold);
        report.scalar_metrics = metrics(report.confusion);
        RocCurve curve = roc(scores, labels);
        report.auc = curve.auc;

        std::string stem =
            o.out + "/report_" + scorer.meta.kind + "_" + scorer.meta.vuln_class + "_" + name;
        nlohmann::ordered_json j;
        j["toolkit_version"] = std::string(kToolkitVersion);
        j["seed"] = scorer.meta.seed;
        j["config_digest"] = scorer.meta.config_digest;
        j["embedding_checksum"] = scorer.meta.embedding_checksum;
        j["vuln_class"] = scorer.meta.vuln_class;
        j["model"] = scorer.meta.kind;
        j["partition"] = name;
        j["threshold"] = o.threshold;
        j["confusion"] = {{"tp", report.confusion.tp},
                          {"fp", report.confusion.fp},
                          {"tn", report.confusion.tn},
                          {"fn", report.confusion.fn}};
        j["metrics"] = {{"accuracy", report.scalar_metrics.accuracy},
                        {"precision", report.scalar_metrics.precision},
                        {"precision_defined", report.scalar_metrics.precision_defined},
                        {"recall", report.scalar_metrics.recall},
                        {"recall_defined", report.scalar_metrics.recall_defined},
                        {"f_score", report.scalar_metrics.f_score},
                        {"f_score_defined", report.scalar_metrics.f_score_defined}};
        j["auc"] = report.auc;
        write_file(stem + ".json", j.dump(2) + "\n");
        std::string text = report_to_text(report);
        write_file(stem + ".txt", text);
        write_file(o.out + "/roc_" + scorer.meta.kind + "_" + scorer.meta.vuln_class + "_" + name +
                       ".csv",
                   roc_to_csv(curve));
        std::cout << text << "\n";
    }
    return 0;
}

struct ScanOpts {
    std::string model_path;
    std::string embedding;
    std::string target;
    double threshold = 0.5;
};

int cmd_scan(const ScanOpts& o) {
    EmbeddingModel emb = load_embedding(o.embedding);
    Scorer scorer = make_scorer(o.model_path, emb, o.threshold);
    if (scorer.meta.toolkit_version != kToolkitVersion) {
        throw Error("model was written by toolkit version " + scorer.meta.toolkit_version +
                    ", this binary is " + std::string(kToolkitVersion));
    }

    std::vector<std::string> files;
    if (fs::is_directory(o.target)) {
        for (const auto& entry : fs::recursive_directory_iterator(o.target)) {
            if (entry.is_regular_file() && entry.path().extension() == ".py") {
                files.push_back(entry.path().string());
            }
        }
        std::sort(files.begin(), files.end());
    } else if (fs::exists(o.target)) {
        files.push_back(o.target);
    } else {
        throw Error("scan target " + o.target + " does not exist");
    }

    struct Finding {
        std::string path;
        double score;
        int label;
    };
    std::vector<Finding> findings;
    int skipped = 0;
    for (const std::string& path : files) {
        try {
            std::string source = read_file(path);
            TokenStream stream = tokenize(source, path);
            double score = scorer.score(stream);
            findings.push_back({path, score, score >= o.threshold ? 1 : 0});
        } catch (const std::exception& e) {
            std::cerr << "warning: skipping " << path << ": " << e.what() << "\n";
            ++skipped;
        }
    }
    std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.path < b.path;
    });

    int flagged = 0;
    for (const Finding& f : findings) {
        std::cout << f.path << " " << fmt_g(f.score) << " " << f.label << "\n";
        flagged += f.label;
    }
    std::cerr << "scanned " << findings.size() << " file(s), " << flagged << " finding(s), "
              << skipped << " skipped\n";
    return flagged > 0 ? 2 : 0;
}

int cmd_tokenize(const std::string& path) {
    TokenStream stream = tokenize(read_file(path), path);
    for (const Token& t : stream.tokens) {
        std::cout << kind_name(t.kind) << "\t" << t.lexeme << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lexical vulnerability detection toolkit"};
    app.set_config("--config", "", "key-value config file with [subcommand] sections");
    app.require_subcommand(1);

    EmbedOpts embed_opts;
    auto* embed_cmd = app.add_subcommand("embed", "train word2vec token embeddings");
    embed_cmd->add_option("--dataset", embed_opts.dataset, "JSONL dataset path")->required();
    embed_cmd->add_option("--class", embed_opts.vuln_class, "restrict to one vulnerability class");
    embed_cmd->add_option("--out", embed_opts.out, "embedding file to write")->required();
    embed_cmd->add_option("--seed", embed_opts.seed_text, "seed (VULNLEX_SEED fallback)");
    embed_cmd->add_option("--dim", embed_opts.config.vector_dim, "vector dimensionality");
    embed_cmd->add_option("--min-count", embed_opts.config.min_count, "vocabulary frequency cutoff");
    embed_cmd->add_option("--iterations", embed_opts.config.iterations, "training iterations");
    embed_cmd->add_option("--window", embed_opts.config.window, "context window");
    embed_cmd->add_option("--negatives", embed_opts.config.negatives_per_positive,
                          "negative samples per positive");
    embed_cmd->add_option("--learning-rate", embed_opts.config.initial_learning_rate,
                          "initial learning rate");

    TrainOpts train_opts;
    auto* train_cmd = app.add_subcommand("train", "train a classifier against an embedding");
    train_cmd->add_option("--dataset", train_opts.dataset, "JSONL dataset path")->required();
    train_cmd->add_option("--class", train_opts.vuln_class, "vulnerability class to train on");
    train_cmd->add_option("--model", train_opts.model_kind, "model kind")
        ->required()
        ->check(CLI::IsMember({"gnb", "tree", "logreg", "mlp", "bilstm"}));
    train_cmd->add_option("--embedding", train_opts.embedding, "embedding file")->required();
    train_cmd->add_option("--out", train_opts.out, "artifact output directory")->required();
    train_cmd->add_option("--seed", train_opts.seed_text, "seed (VULNLEX_SEED fallback)");
    train_cmd->add_option("--train-fraction", train_opts.train_fraction, "train split fraction");
    train_cmd->add_option("--test-fraction", train_opts.test_fraction, "test split fraction");
    train_cmd->add_option("--validation-fraction", train_opts.validation_fraction,
                          "validation split fraction");
    train_cmd->add_option("--max-len", train_opts.max_len, "sequence window for the bilstm");
    train_cmd->add_option("--max-depth", train_opts.max_depth,
                          "tree depth limit (default 2 for xss/open_redirect, else 5)");
    train_cmd->add_option("--epochs", train_opts.epochs, "bilstm training epochs");
    train_cmd->add_option("--batch-size", train_opts.batch_size, "bilstm batch size");
    train_cmd->add_option("--dropout", train_opts.dropout, "bilstm dropout rate");
    train_cmd->add_option("--hidden", train_opts.hidden, "bilstm hidden units per direction");
    train_cmd->add_option("--layers", train_opts.layers, "bilstm stacked layers");
    train_cmd->add_option("--learning-rate", train_opts.learning_rate, "Adam learning rate");
    train_cmd->add_option("--mlp-max-iter", train_opts.mlp_max_iter, "MLP epoch limit");

    EvaluateOpts eval_opts;
    auto* eval_cmd = app.add_subcommand("evaluate", "score a trained model on held-out partitions");
    eval_cmd->add_option("--model", eval_opts.model_path, "model file")->required();
    eval_cmd->add_option("--dataset", eval_opts.dataset, "JSONL dataset path")->required();
    eval_cmd->add_option("--embedding", eval_opts.embedding, "embedding file")->required();
    eval_cmd->add_option("--partition", eval_opts.partition, "partition(s) to evaluate")
        ->check(CLI::IsMember({"test", "validation", "both"}));
    eval_cmd->add_option("--out", eval_opts.out, "report output directory");
    eval_cmd->add_option("--seed", eval_opts.seed_text, "must match the model's recorded seed");
    eval_cmd->add_option("--threshold", eval_opts.threshold, "decision threshold");

    ScanOpts scan_opts;
    auto* scan_cmd = app.add_subcommand("scan", "score Python files with a trained model");
    scan_cmd->add_option("--model", scan_opts.model_path, "model file")->required();
    scan_cmd->add_option("--embedding", scan_opts.embedding, "embedding file")->required();
    scan_cmd->add_option("--threshold", scan_opts.threshold, "finding threshold");
    scan_cmd->add_option("target", scan_opts.target, "file or directory to scan")->required();

    std::string tokenize_path;
    auto* tokenize_cmd = app.add_subcommand("tokenize", "print the token stream of a Python file");
    tokenize_cmd->add_option("file", tokenize_path, "Python source file")->required();

    int rc = 0;
    embed_cmd->callback([&] { rc = cmd_embed(embed_opts); });
    train_cmd->callback([&] { rc = cmd_train(train_opts); });
    eval_cmd->callback([&] { rc = cmd_evaluate(eval_opts); });
    scan_cmd->callback([&] { rc = cmd_scan(scan_opts); });
    tokenize_cmd->callback([&] { rc = cmd_tokenize(tokenize_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
