#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "expsg/io.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string out_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/matdim_cli_out.txt";
    std::string cmd = std::string(EXPSG_MATDIM_BIN) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string data_dir() { return std::string(EXPSG_SOURCE_DIR) + "/data"; }

std::string write_matrix(const std::string& name, const std::string& body) {
    std::string path = "/tmp/" + name;
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("analyze") {
    RunResult nat = run("analyze 1");
    CHECK(nat.exit_code == 0);
    CHECK(nat.output.find("exact dimension: 1") != std::string::npos);

    RunResult r = run("analyze 4,5,7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("frobenius:       6") != std::string::npos);
    CHECK(r.output.find("exact dimension: 3") != std::string::npos);

    RunResult bad = run("analyze 4,x");
    CHECK(bad.exit_code == 2);

    RunResult scaled = run("analyze 4,6");
    CHECK(scaled.exit_code == 0);
    CHECK(scaled.output.find("scaled") != std::string::npos);
}

TEST_CASE("verify and expsg") {
    std::string m = write_matrix("cli_a457.json",
        R"({"dim": 3, "entries": [["0","0","256"],["1/8","0","-16"],["0","1/4","2"]]})");
    CHECK(run("verify --matrix " + m + " --semigroup 4,5,7").exit_code == 0);

    RunResult fail = run("verify --matrix " + m + " --semigroup 4,5,6");
    CHECK(fail.exit_code == 1);
    CHECK(fail.output.find("exponent 6") != std::string::npos);

    CHECK(run("verify --matrix /nonexistent.json --semigroup 4,5,7").exit_code == 2);
    CHECK(run("verify --matrix " + m).exit_code == 2);  // missing required option

    RunResult e = run("expsg --matrix " + m + " --cap 20");
    CHECK(e.exit_code == 0);
    CHECK(e.output.find("0 4 5 7 8") != std::string::npos);
    CHECK(e.output.find(">= 7") != std::string::npos);
}

TEST_CASE("construct certificates") {
    RunResult cycle = run("construct cycle --semigroup 6,9,20 --dim 6");
    CHECK(cycle.exit_code == 0);
    expsg::Json j = expsg::Json::parse(cycle.output);
    CHECK(j["method"] == "cycle");
    CHECK(j["matrix"]["dim"] == 6);
    CHECK(j["matrix"]["entries"][1][0] == "1/256");

    RunResult uni = run("construct union --a 4 --b 6 --prime 5 --z 14557");
    CHECK(uni.exit_code == 0);
    expsg::Json ju = expsg::Json::parse(uni.output);
    CHECK(ju["matrix"]["entries"][0][0] == "72785");
    CHECK(ju["matrix"]["entries"][0][1] == "14556/3125");

    CHECK(run("construct ordinary --b 4").exit_code == 0);
    CHECK(run("construct cyclic --a 5").exit_code == 0);

    RunResult inter = run("construct intersection --parts \"2,31:2;3,31:3;5,31:5\"");
    CHECK(inter.exit_code == 0);
    expsg::Json ji = expsg::Json::parse(inter.output);
    CHECK(ji["matrix"]["dim"] == 10);
    CHECK(ji["semigroup"]["generators"].size() == 9);

    std::string m = write_matrix("cli_a457b.json",
        R"({"dim": 3, "entries": [["0","0","256"],["1/8","0","-16"],["0","1/4","2"]]})");
    RunResult quot = run("construct quotient --matrix " + m + " --g 4 --semigroup 1");
    CHECK(quot.exit_code == 0);

    // A wrong claimed quotient fails verification.
    CHECK(run("construct quotient --matrix " + m + " --g 2 --semigroup 1").exit_code == 1);
}

TEST_CASE("cmm subcommand") {
    RunResult r = run("cmm --semigroup 4,6,9,11 --dim 2");
    CHECK(r.exit_code == 0);
    expsg::Json j = expsg::Json::parse(r.output);
    CHECK(j["method"] == "cmm");
    CHECK(j["matrix"]["dim"] == 2);

    // Dimension 2 is obstructed for <4,5,7>: gcd of small elements is 1.
    RunResult none = run("cmm --semigroup 4,5,7 --dim 2");
    CHECK(none.exit_code == 1);
}

TEST_CASE("catalog subcommand") {
    std::string flags = " --store " + data_dir() + "/certificates --golden " + data_dir() +
                        "/reference_dimensions.json ";
    RunResult md = run(flags + "catalog --frobenius 5 --check-golden");
    CHECK(md.exit_code == 0);
    CHECK(md.output.find("| 2,7 |") != std::string::npos);
    CHECK(md.output.find("golden check passed") != std::string::npos);

    RunResult csv = run(flags + "catalog --genus 2 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.find("\"3,4,5\",2,2,3,2,2,2,two_by_two") != std::string::npos);

    // JSON output is byte-stable across runs.
    RunResult j1 = run(flags + "catalog --frobenius 4 --format json");
    RunResult j2 = run(flags + "catalog --frobenius 4 --format json");
    CHECK(j1.exit_code == 0);
    CHECK(j1.output == j2.output);

    CHECK(run(flags + "catalog").exit_code == 2);
    CHECK(run(flags + "catalog --frobenius 3 --genus 3").exit_code == 2);

    // A golden file that disagrees makes the check fail.
    std::string bad = write_matrix("cli_bad_golden.json",
                                   R"([{"generators": [2, 3], "dimension": 7}])");
    RunResult mismatch = run(" --golden " + bad + " catalog --frobenius 1 --check-golden");
    CHECK(mismatch.exit_code == 1);
}

TEST_CASE("unknown flags and subcommands are rejected") {
    CHECK(run("analyze 4,5,7 --bogus").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
    CHECK(run("cmm --help").exit_code == 0);
}
