#include <gtest/gtest.h>

#include <sstream>

#include "preserverlab/cli.hpp"
#include "preserverlab/jsonio.hpp"

using namespace preserverlab;
using json::Json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(PRESERVERLAB_SAMPLES_DIR) + "/" + name; }

std::string redump(const std::string& kind, const Json& body) { return json::document(kind, body).dump(2) + "\n"; }

// Parses the emitted document, rebuilds the object and re-emits it.
template <class Read, class Write>
void expect_round_trip(const Outcome& r, const std::string& kind, Read read, Write write) {
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j["kind"], kind);
    EXPECT_EQ(redump(kind, write(read(j))), r.out);
}

}  // namespace

TEST(Cli, EvalCommutator) {
    const Outcome r = run({"eval", "--input", sample("eval_commutator.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["value"], Json::parse(R"j([["0","1"],["0","0"]])j"));
    EXPECT_FALSE(j["zero"].get<bool>());
}

TEST(Cli, StdinIsTheDefaultInput) {
    std::ostringstream text;
    text << R"j({"poly": {"k": 2, "field": "Q", "terms": [{"perm": [1, 2], "coeff": "1"}, {"perm": [2, 1], "coeff": "-1"}]},)j"
         << R"j( "tuple": {"field": "Q", "matrices": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]}})j";
    const Outcome r = run({"eval"}, text.str());
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(Json::parse(r.out)["zero"].get<bool>());
}

TEST(Cli, ClassifyIdempotentComplement) {
    const Outcome r = run({"classify", "--path", "both", "--input", sample("classify_idempotent.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["agree"].get<bool>());
    EXPECT_EQ(j["structural"]["case"], "ScalarIdempotentLine");
    EXPECT_EQ(j["direct"]["case"], "ScalarIdempotentLine");
    EXPECT_EQ(j["structural"]["dimension"], 1);
}

TEST(Cli, ExampleTransposeXY) {
    const Outcome r = run({"examples", "--id", "transpose_xy"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["matches"].get<bool>());
    EXPECT_FALSE(j["verdict"]["holds"].get<bool>());
}

TEST(Cli, RoundTrips) {
    expect_round_trip(run({"examples", "--id", "transpose_xy"}), "example", json::example_from_json,
                      json::example_to_json);
    expect_round_trip(run({"verify-preserver", "--input", sample("verify_frobenius_f4.json")}), "verdict",
                      json::verdict_from_json, json::verdict_to_json);
    {
        const Outcome r = run({"verify-preserver", "--input", sample("verify_transpose_q.json")});
        EXPECT_EQ(r.code, cli::kExitViolated);
        const Json j = Json::parse(r.out);
        EXPECT_EQ(redump("verdict", json::verdict_to_json(json::verdict_from_json(j))), r.out);
    }
    expect_round_trip(run({"oracle", "--lemma", "orthogonality", "--field", "GF(3)", "--n", "2"}), "lemma_report",
                      json::report_from_json, json::report_to_json);
    expect_round_trip(run({"oracle", "--lemma", "spectrum_formula", "--field", "GF(4)", "--cases", "20", "--seed", "3"}),
                      "lemma_report", json::report_from_json, json::report_to_json);
    const std::string lifted =
        R"j({"poly": {"k": 2, "field": "GF(3)", "terms": [{"perm": [1, 2], "coeff": "1"}, {"perm": [2, 1], "coeff": "1"}]},)j"
        R"j( "matrix": {"field": "GF(3)", "rows": [["0", "2", "0"], ["1", "0", "0"], ["0", "0", "1"]]}})j";
    for (const char* path : {"structural", "direct"}) {
        expect_round_trip(run({"classify", "--lift", "--path", path}, lifted), "classification",
                          json::classification_from_json, json::classification_to_json);
    }
    {
        const Outcome r = run({"classify", "--path", "direct", "--input", sample("classify_rotation_q.json")});
        expect_round_trip(r, "classification", json::classification_from_json, json::classification_to_json);
        const Json j = Json::parse(r.out);
        EXPECT_EQ(j["case"], "Other");
        EXPECT_EQ(j["dimension"], 2);
    }
    expect_round_trip(run({"classify", "--input", sample("classify_idempotent.json")}), "classification",
                      json::classification_from_json, json::classification_to_json);
    const std::string m = R"j({"matrix": {"field": "GF(3)", "rows": [["0", "1", "0"], ["2", "0", "0"], ["0", "0", "1"]]}})j";
    expect_round_trip(run({"rcf"}, m), "rcf", [](const Json& j) { return json::rcf_from_json(j); }, json::rcf_to_json);
    expect_round_trip(run({"jordan"}, m), "jordan", json::jordan_from_json, json::jordan_to_json);
    expect_round_trip(run({"anticommutant"}, m), "subspace",
                      [](const Json& j) { return json::basis_from_json(j); }, json::basis_to_json);
    expect_round_trip(run({"rcf", "--input", sample("matrix_q.json")}), "rcf",
                      [](const Json& j) { return json::rcf_from_json(j); }, json::rcf_to_json);
    EXPECT_EQ(run({"jordan", "--input", sample("matrix_q.json")}).code, cli::kExitInvalid);
}

TEST(Cli, OutputDoesNotDependOnJobs) {
    const std::vector<std::string> base{"oracle", "--lemma", "nilpotent_proportionality", "--field", "GF(5)",
                                        "--n", "3", "--trials", "30", "--seed", "11"};
    auto with_jobs = [&](const char* j) {
        auto a = base;
        a.insert(a.end(), {"--jobs", j});
        return run(a);
    };
    const Outcome one = with_jobs("1"), four = with_jobs("4"), again = with_jobs("4");
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(four.out, again.out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, cli::kExitInvalid);
    EXPECT_EQ(run({"no-such-command"}).code, cli::kExitInvalid);
    EXPECT_EQ(run({"eval"}, "not json").code, cli::kExitInvalid);
    EXPECT_EQ(run({"eval"}, "{}").code, cli::kExitInvalid);
    EXPECT_EQ(run({"oracle", "--lemma", "nonsense"}).code, cli::kExitInvalid);
    EXPECT_EQ(run({"enumerate", "--what", "homs", "--field", "GF(6)"}).code, cli::kExitInvalid);
    EXPECT_EQ(run({"enumerate", "--what", "matrices", "--field", "Q"}).code, cli::kExitInvalid);
    EXPECT_EQ(run({"enumerate", "--what", "matrices", "--field", "GF(7)", "--n", "4"}).code, cli::kExitBudget);
    EXPECT_EQ(run({"classify", "--lift", "--input", sample("classify_rotation_q.json")}).code, cli::kExitInvalid);

    const Outcome bad = run({"rcf"}, R"j({"matrix": {"field": "GF(4)", "rows": [["1", "2"]]}})j");
    EXPECT_EQ(bad.code, cli::kExitInvalid);
    const Json e = Json::parse(bad.err);
    EXPECT_EQ(e["kind"], "error");
    EXPECT_EQ(e["error"], "invalid_input");
    EXPECT_TRUE(bad.out.empty());

    const Outcome help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("verify-preserver"), std::string::npos);
}

TEST(Cli, EnumerateCounts) {
    auto count = [](std::vector<std::string> a) {
        const Outcome r = run(a);
        EXPECT_EQ(r.code, 0) << r.err;
        return Json::parse(r.out)["count"].get<std::uint64_t>();
    };
    EXPECT_EQ(count({"enumerate", "--what", "rank-one-idempotents", "--field", "GF(3)", "--n", "2"}), 12u);
    EXPECT_EQ(count({"enumerate", "--what", "homs", "--field", "GF(2^3)"}), 3u);
    EXPECT_EQ(count({"enumerate", "--what", "homs", "--field", "GF(4)"}), 2u);
    EXPECT_EQ(count({"enumerate", "--what", "permutations", "--k", "4"}), 24u);
    EXPECT_EQ(count({"enumerate", "--what", "matrices", "--field", "GF(2)", "--n", "2"}), 16u);
}

TEST(Cli, ZeroSetAndIdentity) {
    const Outcome z = run({"zeros", "--poly", sample("anticommutator_f3.json"), "--n", "1", "--limit", "2"});
    ASSERT_EQ(z.code, 0) << z.err;
    const Json j = Json::parse(z.out);
    EXPECT_EQ(j["count"], 5);
    EXPECT_EQ(j["tuples"].size(), 2u);

    const std::string commutator =
        R"j({"k": 2, "field": "GF(2)", "terms": [{"perm": [1, 2], "coeff": "1"}, {"perm": [2, 1], "coeff": "1"}]})j";
    const Outcome id = run({"zeros", "--identity", "--poly", "-", "--n", "1"}, commutator);
    ASSERT_EQ(id.code, 0) << id.err;
    EXPECT_EQ(Json::parse(id.out)["outcome"], "identity");
    const Outcome not_id = run({"zeros", "--identity", "--poly", "-", "--n", "2"}, commutator);
    ASSERT_EQ(not_id.code, 0) << not_id.err;
    EXPECT_EQ(Json::parse(not_id.out)["outcome"], "not_identity");
    EXPECT_EQ(run({"zeros", "--identity", "--poly", sample("commutator_q.json"), "--n", "1"}).code, cli::kExitInvalid);
}
