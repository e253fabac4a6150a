#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vulnlex/bilstm.hpp"
#include "vulnlex/embedding.hpp"
#include "vulnlex/util.hpp"

using namespace vulnlex;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr merged
};

CmdResult run_raw(const std::string& command) {
    CmdResult result;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

CmdResult run(const std::string& args) { return run_raw(std::string(VULNLEX_BIN) + " " + args); }

std::string fixture(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

// Shared artifacts built once: a small embedding plus one model per kind,
// all trained on the sql_injection fixture with seed 42.
struct SharedArtifacts {
    std::string dir;
    std::string embedding;
    std::string models;

    std::string model(const std::string& kind) const {
        return models + "/" + kind + "_sql_injection.model.json";
    }
};

const SharedArtifacts& shared() {
    static SharedArtifacts artifacts = [] {
        SharedArtifacts a;
        a.dir = (fs::temp_directory_path() / "vulnlex_cli_test").string();
        fs::remove_all(a.dir);
        fs::create_directories(a.dir);
        a.embedding = a.dir + "/sql.emb";
        a.models = a.dir + "/models";

        CmdResult embed = run("embed --dataset " + fixture("sql_injection.jsonl") + " --out " +
                              a.embedding + " --seed 42 --iterations 2 --min-count 2 --dim 40");
        REQUIRE(embed.exit_code == 0);
        for (std::string kind : {"gnb", "tree", "logreg"}) {
            CmdResult train = run("train --dataset " + fixture("sql_injection.jsonl") +
                                  " --model " + kind + " --embedding " + a.embedding + " --out " +
                                  a.models + " --seed 42");
            REQUIRE(train.exit_code == 0);
        }
        CmdResult mlp = run("train --dataset " + fixture("sql_injection.jsonl") +
                            " --model mlp --embedding " + a.embedding + " --out " + a.models +
                            " --seed 42 --mlp-max-iter 60");
        REQUIRE(mlp.exit_code == 0);
        CmdResult bilstm = run("train --dataset " + fixture("sql_injection.jsonl") +
                               " --model bilstm --embedding " + a.embedding + " --out " + a.models +
                               " --seed 42 --epochs 2 --hidden 4 --layers 1 --max-len 24"
                               " --batch-size 32");
        REQUIRE(bilstm.exit_code == 0);
        return a;
    }();
    return artifacts;
}

}  // namespace

TEST_CASE("command-level defaults match the documented configuration") {
    CHECK(Word2vecConfig{}.vector_dim == 300);
    CHECK(Word2vecConfig{}.min_count == 10);
    CHECK(Word2vecConfig{}.iterations == 200);
    CHECK(TrainConfig{}.epochs == 50);
    CHECK(TrainConfig{}.batch_size == 128);
    CHECK(TrainConfig{}.dropout_rate == 0.2);
}

TEST_CASE("embed with the default dimensionality writes a 300-wide table") {
    std::string out = shared().dir + "/default_dim.emb";
    CmdResult r = run("embed --dataset " + fixture("sql_injection.jsonl") + " --out " + out +
                      " --seed 1 --iterations 2 --min-count 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("vocabulary size:") != std::string::npos);
    CHECK(r.output.find("final average loss:") != std::string::npos);

    std::string content = read_file(out);
    std::string header = content.substr(0, content.find('\n'));
    CHECK(header.substr(header.find(' ') + 1) == "300");

    nlohmann::json meta = nlohmann::json::parse(read_file(embedding_sidecar_path(out)));
    CHECK(meta["toolkit_version"] == std::string(kToolkitVersion));
    CHECK(meta["seed"] == 1);
    CHECK(meta["config"]["vector_dim"] == 300);
}

TEST_CASE("identical seeds reproduce embedding files byte for byte") {
    std::string a = shared().dir + "/rerun_a.emb";
    std::string b = shared().dir + "/rerun_b.emb";
    std::string args = "embed --dataset " + fixture("sql_injection.jsonl") +
                       " --seed 7 --iterations 2 --min-count 2 --dim 24 --out ";
    REQUIRE(run(args + a).exit_code == 0);
    REQUIRE(run(args + b).exit_code == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_file(embedding_sidecar_path(a)) == read_file(embedding_sidecar_path(b)));

    std::string c = shared().dir + "/rerun_c.emb";
    REQUIRE(run("embed --dataset " + fixture("sql_injection.jsonl") +
                " --seed 8 --iterations 2 --min-count 2 --dim 24 --out " + c)
                .exit_code == 0);
    CHECK(read_file(a) != read_file(c));
}

TEST_CASE("embed rejects an empty selection") {
    CmdResult r = run("embed --dataset " + fixture("sql_injection.jsonl") +
                      " --class open_redirect --out /tmp/never.emb");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("empty corpus") != std::string::npos);
}

TEST_CASE("seed precedence: flag over environment over default") {
    std::string by_env = shared().dir + "/env_seed.emb";
    CmdResult r = run_raw("VULNLEX_SEED=55 " + std::string(VULNLEX_BIN) + " embed --dataset " +
                          fixture("xss.jsonl") + " --out " + by_env +
                          " --iterations 1 --min-count 2 --dim 8");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(read_file(embedding_sidecar_path(by_env)))["seed"] == 55);

    std::string by_flag = shared().dir + "/flag_seed.emb";
    r = run_raw("VULNLEX_SEED=55 " + std::string(VULNLEX_BIN) + " embed --dataset " +
                fixture("xss.jsonl") + " --out " + by_flag +
                " --seed 66 --iterations 1 --min-count 2 --dim 8");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(read_file(embedding_sidecar_path(by_flag)))["seed"] == 66);
}

TEST_CASE("config files provide per-subcommand defaults") {
    std::string config_path = shared().dir + "/embed.ini";
    std::string out = shared().dir + "/from_config.emb";
    write_file(config_path, "[embed]\ndataset=" + fixture("xss.jsonl") + "\nout=" + out +
                                "\niterations=1\nmin-count=2\ndim=8\nseed=5\n");
    CmdResult r = run("--config " + config_path + " embed");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(read_file(embedding_sidecar_path(out)))["seed"] == 5);
}

TEST_CASE("model artifacts embed the chain metadata") {
    nlohmann::json model = nlohmann::json::parse(read_file(shared().model("gnb")));
    CHECK(model["kind"] == "gnb");
    CHECK(model["toolkit_version"] == std::string(kToolkitVersion));
    CHECK(model["seed"] == 42);
    CHECK(model["vuln_class"] == "sql_injection");
    CHECK(model["embedding_checksum"] == file_checksum(shared().embedding));
    CHECK(model["split"]["train"] == 0.7);
    CHECK(model.contains("config_digest"));
}

TEST_CASE("tree depth defaults depend on the class and are recorded") {
    nlohmann::json sql_tree = nlohmann::json::parse(read_file(shared().model("tree")));
    CHECK(sql_tree["config"]["max_depth"] == 5);

    std::string xss_emb = shared().dir + "/xss.emb";
    REQUIRE(run("embed --dataset " + fixture("xss.jsonl") + " --out " + xss_emb +
                " --seed 2 --iterations 1 --min-count 2 --dim 16")
                .exit_code == 0);
    std::string out = shared().dir + "/xss_models";
    REQUIRE(run("train --dataset " + fixture("xss.jsonl") + " --model tree --embedding " +
                xss_emb + " --out " + out + " --seed 2")
                .exit_code == 0);
    nlohmann::json xss_tree =
        nlohmann::json::parse(read_file(out + "/tree_xss.model.json"));
    CHECK(xss_tree["config"]["max_depth"] == 2);

    REQUIRE(run("train --dataset " + fixture("xss.jsonl") + " --model tree --embedding " +
                xss_emb + " --out " + out + " --seed 2 --max-depth 7")
                .exit_code == 0);
    CHECK(nlohmann::json::parse(read_file(out + "/tree_xss.model.json"))["config"]
              ["max_depth"] == 7);
}

TEST_CASE("iterative models write history files") {
    nlohmann::json bilstm_history = nlohmann::json::parse(
        read_file(shared().models + "/bilstm_sql_injection.history.json"));
    REQUIRE(bilstm_history.is_array());
    CHECK(bilstm_history.size() == 2);  // matches --epochs 2
    CHECK(bilstm_history[0].contains("train_loss"));
    CHECK(bilstm_history[0].contains("validation_accuracy"));

    nlohmann::json mlp_history =
        nlohmann::json::parse(read_file(shared().models + "/mlp_sql_injection.history.json"));
    CHECK(!mlp_history.empty());
    CHECK(mlp_history[0].contains("epoch"));

    nlohmann::json logreg_history =
        nlohmann::json::parse(read_file(shared().models + "/logreg_sql_injection.history.json"));
    CHECK(!logreg_history.empty());
    CHECK(logreg_history[0].contains("iteration"));
}

TEST_CASE("train refuses mixed-class datasets without --class") {
    CmdResult r = run("train --dataset " + fixture("mixed.jsonl") + " --model gnb --embedding " +
                      shared().embedding + " --out " + shared().dir + "/mixed_models --seed 1");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("--class") != std::string::npos);

    CmdResult ok = run("train --dataset " + fixture("mixed.jsonl") +
                       " --class sql_injection --model gnb --embedding " + shared().embedding +
                       " --out " + shared().dir + "/mixed_models --seed 1");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("evaluate writes one report set per partition") {
    std::string out = shared().dir + "/reports";
    CmdResult r = run("evaluate --model " + shared().model("logreg") + " --dataset " +
                      fixture("sql_injection.jsonl") + " --embedding " + shared().embedding +
                      " --out " + out);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("partition    test") != std::string::npos);
    CHECK(r.output.find("partition    validation") != std::string::npos);

    for (std::string partition : {"test", "validation"}) {
        std::string stem = out + "/report_logreg_sql_injection_" + partition;
        nlohmann::json report = nlohmann::json::parse(read_file(stem + ".json"));
        CHECK(report["partition"] == partition);
        CHECK(report["model"] == "logreg");
        CHECK(report["seed"] == 42);
        long long total = report["confusion"]["tp"].get<long long>() +
                          report["confusion"]["fp"].get<long long>() +
                          report["confusion"]["tn"].get<long long>() +
                          report["confusion"]["fn"].get<long long>();
        CHECK(total == 30);  // 15% of 200
        std::string text = read_file(stem + ".txt");
        CHECK(text.find(partition) != std::string::npos);
        std::string csv = read_file(out + "/roc_logreg_sql_injection_" + partition + ".csv");
        CHECK(csv.substr(0, 8) == "fpr,tpr\n");
    }

    std::string single = shared().dir + "/reports_test_only";
    REQUIRE(run("evaluate --model " + shared().model("logreg") + " --dataset " +
                fixture("sql_injection.jsonl") + " --embedding " + shared().embedding +
                " --partition test --out " + single)
                .exit_code == 0);
    CHECK(fs::exists(single + "/report_logreg_sql_injection_test.json"));
    CHECK(!fs::exists(single + "/report_logreg_sql_injection_validation.json"));
}

TEST_CASE("evaluate is reproducible byte for byte") {
    std::string a = shared().dir + "/rep_a";
    std::string b = shared().dir + "/rep_b";
    for (const std::string& out : {a, b}) {
        REQUIRE(run("evaluate --model " + shared().model("mlp") + " --dataset " +
                    fixture("sql_injection.jsonl") + " --embedding " + shared().embedding +
                    " --out " + out)
                    .exit_code == 0);
    }
    for (std::string name :
         {"report_mlp_sql_injection_test.json", "report_mlp_sql_injection_test.txt",
          "roc_mlp_sql_injection_test.csv", "report_mlp_sql_injection_validation.json"}) {
        CHECK(read_file(a + "/" + name) == read_file(b + "/" + name));
    }
}

TEST_CASE("evaluate verifies the artifact chain") {
    std::string foreign = shared().dir + "/foreign.emb";
    REQUIRE(run("embed --dataset " + fixture("sql_injection.jsonl") + " --out " + foreign +
                " --seed 9 --iterations 1 --min-count 2 --dim 40")
                .exit_code == 0);

    CmdResult wrong_emb = run("evaluate --model " + shared().model("gnb") + " --dataset " +
                              fixture("sql_injection.jsonl") + " --embedding " + foreign);
    CHECK(wrong_emb.exit_code == 1);
    CHECK(wrong_emb.output.find("artifact chain mismatch") != std::string::npos);

    CmdResult wrong_seed = run("evaluate --model " + shared().model("gnb") + " --dataset " +
                               fixture("sql_injection.jsonl") + " --embedding " +
                               shared().embedding + " --seed 41 --out " + shared().dir + "/x");
    CHECK(wrong_seed.exit_code == 1);
    CHECK(wrong_seed.output.find("seed") != std::string::npos);

    CmdResult right_seed = run("evaluate --model " + shared().model("gnb") + " --dataset " +
                               fixture("sql_injection.jsonl") + " --embedding " +
                               shared().embedding + " --seed 42 --out " + shared().dir + "/y");
    CHECK(right_seed.exit_code == 0);
}

TEST_CASE("every model kind evaluates through the same pipeline") {
    for (std::string kind : {"gnb", "tree", "logreg", "mlp", "bilstm"}) {
        CmdResult r = run("evaluate --model " + shared().model(kind) + " --dataset " +
                          fixture("sql_injection.jsonl") + " --embedding " + shared().embedding +
                          " --partition test --out " + shared().dir + "/all_kinds");
        CAPTURE(kind);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find(kind) != std::string::npos);
    }
}

TEST_CASE("scan flags findings, skips unreadable files, and sets the exit code") {
    CmdResult r = run("scan --model " + shared().model("logreg") + " --embedding " +
                      shared().embedding + " " + fixture("probe"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("unsafe_query.py") != std::string::npos);
    CHECK(r.output.find("skipping") != std::string::npos);  // broken.py is not UTF-8

    // Output lines are "path score label", vulnerable first.
    std::size_t unsafe_pos = r.output.find("unsafe_query.py");
    std::size_t safe_pos = r.output.find("safe_query.py");
    CHECK(unsafe_pos < safe_pos);

    CmdResult clean = run("scan --model " + shared().model("logreg") + " --embedding " +
                          shared().embedding + " " + fixture("probe/safe_query.py"));
    CHECK(clean.exit_code == 0);

    CmdResult high_bar = run("scan --threshold 1.1 --model " + shared().model("logreg") +
                             " --embedding " + shared().embedding + " " + fixture("probe"));
    CHECK(high_bar.exit_code == 0);  // nothing clears an impossible threshold

    CmdResult missing = run("scan --model " + shared().model("logreg") + " --embedding " +
                            shared().embedding + " /no/such/path");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("tokenize prints kind and lexeme per line") {
    CmdResult r = run("tokenize " + fixture("probe/safe_query.py"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("keyword\tdef") != std::string::npos);
    CHECK(r.output.find("string\t<str>") != std::string::npos);
    CHECK(r.output.find("newline\t<nl>") != std::string::npos);

    CHECK(run("tokenize /no/such/file.py").exit_code == 1);
}

TEST_CASE("usage errors exit with 1 and print help on request") {
    CHECK(run("train --model nonsense").exit_code == 1);
    CHECK(run("").exit_code == 1);  // subcommand required
    CmdResult help = run("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("embed") != std::string::npos);
    CHECK(help.output.find("scan") != std::string::npos);
}

TEST_CASE("malformed datasets surface line numbers through the cli") {
    std::string bad = shared().dir + "/bad.jsonl";
    write_file(bad, "{\"id\":\"a\",\"code\":\"x\\n\",\"label\":0,\"vuln_class\":\"xss\"}\nnot json\n");
    CmdResult r = run("embed --dataset " + bad + " --out " + shared().dir + "/bad.emb");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("line 2") != std::string::npos);
}
