// Drives the knc binary (path in KNC_BIN) through its subcommands and checks
// output, exit codes and byte-stable reruns.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const char* bin = std::getenv("KNC_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) result.output += buf.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string temp_config_path() {
    const std::string path = "/tmp/knc_test_config.json";
    std::ofstream out(path);
    out << R"({"in_points": ["0", "1"], "out_points": ["inf"]})";
    return path;
}

}  // namespace

TEST_CASE("basis: classical vector field prints z^3 d/dz") {
    const RunResult r = run("basis --config classical --lambda -1 --n 2 --p 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "z^3 d/dz\n");
}

TEST_CASE("basis accepts a config file") {
    const RunResult r =
        run("basis --config " + temp_config_path() + " --lambda 0 --n 1 --p 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "z^3 - 2*z^2 + z\n");
}

TEST_CASE("pair prints exact rationals") {
    CHECK(run("pair --config classical --lambda 0 --n 3 --m -3").output == "1\n");
    CHECK(run("pair --config classical --lambda 0 --n 3 --m 2").output == "0\n");
}

TEST_CASE("cocycle values") {
    CHECK(run("cocycle --config classical --kind vector --n 2 --m -2").output == "1/2\n");
    CHECK(run("cocycle --config classical --kind mixing --n 1 --m -1").output == "2\n");
    CHECK(run("cocycle --config two_one --kind function --cycle P:1 --n -2 --m 0").output ==
          "-1\n");
}

TEST_CASE("verify: duality suite passes, reruns are byte-identical") {
    const RunResult a = run("verify --suite duality --config two_one --window 3");
    CHECK(a.exit_code == 0);
    const RunResult b = run("verify --suite duality --config two_one --window 3");
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("verify: pullcyc at lambda 0") {
    const RunResult r = run("verify --suite pullcyc --lambda 0 --config classical --window 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fail") == std::string::npos);
}

TEST_CASE("pullcyc subcommand") {
    const RunResult r = run("pullcyc --config classical --lambda 1 --window 4 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fail") == std::string::npos);
    CHECK(r.output.find("pass") != std::string::npos);
}

TEST_CASE("scan emits a locality report") {
    const RunResult r = run("scan --config classical --kind function --cycle sep --window 5 "
                            "--format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"upper_bound\": 0") != std::string::npos);
    CHECK(r.output.find("local-in-window") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("basis --config classical --lambda 0").exit_code == 2);  // missing --n
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("verify --suite no-such-suite --config classical").exit_code == 2);
    CHECK(run("basis --config /tmp/does-not-exist.json --lambda 0 --n 1").exit_code != 0);
}

TEST_CASE("cocycle table dump: Virasoro rows as markdown") {
    const RunResult r =
        run("cocycle --config classical --kind vector --cycle sep --window 4 --format md");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("| 4 | 1 | -4 | 1 | 5 |") != std::string::npos);   // (64-4)/12
    CHECK(r.output.find("| 2 | 1 | -2 | 1 | 1/2 |") != std::string::npos);
    CHECK(r.output.find("| 1 | 1 | -1 | 1 |") == std::string::npos);  // zero rows omitted
}

TEST_CASE("table export") {
    const RunResult r = run("table --config classical --op vf_bracket --window 2 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("lpart,n,p,rpart,m,r,hpart,h,t,coeff") == 0);
    // the Witt relation [e_1, e_{-1}] = -2 e_0
    CHECK(r.output.find("1,1,1,1,-1,1,1,0,1,-2") != std::string::npos);
}
