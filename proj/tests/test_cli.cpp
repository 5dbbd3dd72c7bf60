#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <string>

#include "run_cli.hpp"

using nlohmann::json;

namespace {

const std::string cli = NILBAER_CLI_PATH;

testutil::CliResult run_stdout(const std::string& args) {
    return testutil::run(cli + " " + args + " 2>/dev/null");
}

testutil::CliResult run_all(const std::string& args) {
    return testutil::run(cli + " " + args + " 2>&1");
}

} // namespace

TEST_CASE("witt command") {
    const auto r = run_stdout("witt --weight 2 --gens 2");
    REQUIRE(r.exit_code == 0);
    const json env = json::parse(r.out);
    CHECK(env["command"] == "witt");
    CHECK(env["result"] == "1");
    CHECK(env["version"].is_string());
    CHECK(env["hypotheses"].is_null());
    CHECK(env["params"]["weight"] == 2);

    const auto tsv = run_stdout("witt --weight 1 --gens 7 --format tsv");
    CHECK(tsv.exit_code == 0);
    CHECK(tsv.out == "7\n");
}

TEST_CASE("witt rejects bad input naming the flag") {
    const auto r = run_all("witt --weight 0 --gens 2");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("--weight") != std::string::npos);

    const auto gens = run_all("witt --weight 2 --gens -3");
    CHECK(gens.exit_code == 2);
    CHECK(gens.out.find("--gens") != std::string::npos);

    const auto missing = run_all("witt --weight 2");
    CHECK(missing.exit_code == 2);

    const auto garbage = run_all("witt --weight two --gens 2");
    CHECK(garbage.exit_code == 2);
    CHECK(garbage.out.find("--weight") != std::string::npos);
}

TEST_CASE("basis command") {
    const auto tsv = run_stdout("basis --gens 2 --min 1 --max 2 --format tsv");
    REQUIRE(tsv.exit_code == 0);
    CHECK(tsv.out == "x1\t1\nx2\t1\n[x2,x1]\t2\n");

    const auto empty = run_stdout("basis --gens 1 --min 2 --max 4 --format tsv");
    CHECK(empty.exit_code == 0);
    CHECK(empty.out.empty());

    const auto bad = run_all("basis --gens 2 --min 3 --max 2");
    CHECK(bad.exit_code == 2);

    const auto js = run_stdout("basis --gens 2 --min 1 --max 3");
    REQUIRE(js.exit_code == 0);
    const json env = json::parse(js.out);
    CHECK(env["result"] ==
          json::array({"x1", "x2", "[x2,x1]", "[[x2,x1],x1]", "[[x2,x1],x2]"}));
}

TEST_CASE("sets command") {
    const auto r = run_stdout("sets --n 1 --c1 1 --c2 1 --gens 3 --which A");
    REQUIRE(r.exit_code == 0);
    const json env = json::parse(r.out);
    CHECK(env["result"]["count"] == 3);
    CHECK(env["result"]["kind"] == "A");
    CHECK(env["result"]["pairs"].size() == 3);
    CHECK(env["hypotheses"]["case"] == "overlapping");

    const auto b = run_stdout("sets --n 1 --c1 1 --c2 1 --gens 2 --which B --format tsv");
    CHECK(b.exit_code == 0);
    CHECK(b.out == "[[[x2,x1],x1],[x2,x1]]\t5\n[[[x2,x1],x2],[x2,x1]]\t5\n");

    const auto bad = run_all("sets --n 1 --c1 1 --c2 1 --gens 2 --which D");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("--which") != std::string::npos);

    // set enumeration is not gated on the hypotheses
    const auto ungated = run_stdout("sets --n 1 --c1 1 --c2 2 --gens 2 --which B");
    CHECK(ungated.exit_code == 0);
    CHECK(json::parse(ungated.out)["hypotheses"]["h1"] == false);
}

TEST_CASE("rank v command") {
    const auto ok = run_stdout("rank v --n 1 --c1 3 --c2 2 --gens 2");
    REQUIRE(ok.exit_code == 0);
    const json env = json::parse(ok.out);
    CHECK(env["command"] == "rank v");
    CHECK(env["result"] == "6");
    CHECK(env["hypotheses"]["h1"] == true);
    CHECK(env["hypotheses"]["h2"] == true);
    CHECK(env["hypotheses"]["case"] == "disjoint");

    const auto violated = run_stdout("rank v --n 2 --c1 3 --c2 2 --gens 2");
    CHECK(violated.exit_code == 1);
    const json venv = json::parse(violated.out);
    CHECK(venv["result"].is_null());
    CHECK(venv["hypotheses"]["h2"] == false);
    REQUIRE(venv["hypotheses"]["violations"].size() == 1);
    CHECK(venv["hypotheses"]["violations"][0] == "2c2-c1 > 2n-2 violated: 1 <= 2");
}

TEST_CASE("rank poly command") {
    const auto ok = run_stdout("rank poly --n 2 --classes 2,1 --gens 2");
    REQUIRE(ok.exit_code == 0);
    const json env = json::parse(ok.out);
    CHECK(env["result"] == "10");
    CHECK(env["params"]["classes"] == json::array({2, 1}));

    const auto gated = run_stdout("rank poly --n 2 --classes 1,3 --gens 2");
    CHECK(gated.exit_code == 1);
    const json genv = json::parse(gated.out);
    CHECK(genv["result"].is_null());
    CHECK(genv["hypotheses"]["c1_ge_n"] == false);
    CHECK(genv["hypotheses"]["violations"][0] == "c1 >= n violated: 1 < 2");

    const auto bad = run_all("rank poly --n 1 --classes 2,0 --gens 2");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("--classes") != std::string::npos);
}

TEST_CASE("multiplier abelian command") {
    const auto r = run_stdout("multiplier abelian --rank 2 --torsion 4,2 --class 1");
    REQUIRE(r.exit_code == 0);
    const json env = json::parse(r.out);
    CHECK(env["result"]["free_rank"] == "1");
    REQUIRE(env["result"]["factors"].size() == 2);
    CHECK(env["result"]["factors"][0]["modulus"] == 4);
    CHECK(env["result"]["factors"][0]["multiplicity"] == "2");
    CHECK(env["result"]["factors"][1]["modulus"] == 2);
    CHECK(env["result"]["factors"][1]["multiplicity"] == "3");

    const auto tsv = run_stdout("multiplier abelian --rank 2 --torsion 4,2 --class 1 --format tsv");
    CHECK(tsv.out == "Z\t1\nZ/4\t2\nZ/2\t3\n");

    const auto chain = run_all("multiplier abelian --rank 1 --torsion 4,3 --class 1");
    CHECK(chain.exit_code == 2);
    CHECK(chain.out.find("--torsion") != std::string::npos);

    const auto no_torsion = run_stdout("multiplier abelian --rank 3 --class 2");
    REQUIRE(no_torsion.exit_code == 0);
    CHECK(json::parse(no_torsion.out)["result"]["free_rank"] == "8"); // witt(3, 3)
}

TEST_CASE("verify command") {
    const std::string bounds = "--max-gens 2 --max-n 1 --max-class 2 --max-weight 5 --triples 20";
    const auto ok = run_stdout("verify " + bounds);
    REQUIRE(ok.exit_code == 0);
    const json env = json::parse(ok.out);
    CHECK(env["result"]["ok"] == true);
    CHECK(env["result"]["failures"].empty());

    const auto corrupted = run_stdout("verify " + bounds + " --suite witt --mutate witt");
    CHECK(corrupted.exit_code == 3);
    const json cenv = json::parse(corrupted.out);
    CHECK(cenv["result"]["ok"] == false);
    REQUIRE(cenv["result"]["failures"].size() == 1);
    CHECK_FALSE(cenv["result"]["failures"][0]["point"].get<std::string>().empty());

    const auto unknown = run_all("verify --suite nonsense");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("envelopes are byte-identical across runs and round-trip") {
    const auto first = run_stdout("rank v --n 1 --c1 2 --c2 2 --gens 3");
    const auto second = run_stdout("rank v --n 1 --c1 2 --c2 2 --gens 3");
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == second.out);

    const json env = json::parse(first.out);
    CHECK(env.dump(2) + "\n" == first.out); // parse(serialize(x)) == x, byte for byte

    // key order is fixed
    std::vector<std::string> keys;
    for (auto it = env.begin(); it != env.end(); ++it)
        keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"command", "hypotheses", "params", "result",
                                           "version"});
}

TEST_CASE("exit codes are disjoint and exhaustive") {
    CHECK(run_stdout("witt --weight 3 --gens 3").exit_code == 0);         // success
    CHECK(run_stdout("rank v --n 2 --c1 2 --c2 2 --gens 2").exit_code == 1); // hypothesis
    CHECK(run_all("witt --weight 0 --gens 1").exit_code == 2);            // invalid input
    CHECK(run_stdout("verify --max-gens 2 --max-n 1 --max-class 2 --max-weight 4 --triples 5"
                     " --suite witt --mutate witt")
              .exit_code == 3); // verification failure
    CHECK(run_all("nonsense").exit_code == 2);
    CHECK(run_all("--help").exit_code == 0);
}
