// End-to-end checks of the installed binary: exit codes, stream separation,
// and the job-file entry point. Needs KUZCALC_BIN (set by ctest).

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("KUZCALC_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("exit 0 on success") {
    auto r = run_cli("jac --poly x0^3+x1^3+x2^3 --weights 1,1,1 --degree 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("hilbert: 1 3 3 1") != std::string::npos);
}

TEST_CASE("exit 1 on usage errors") {
    CHECK(run_cli("jac --no-such-flag").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("exit 2 on mathematical precondition failures") {
    // singular input
    CHECK(run_cli("jac --poly x0^3 --weights 1,1 --degree 3").exit_code == 2);
    CHECK(run_cli("hs-dim --poly x0^3 --weights 1,1 --degree 3 --t 0 --m 0").exit_code == 2);
    // parse error
    CHECK(run_cli("jac --poly \"x0^3+\" --weights 1,1 --degree 3").exit_code == 2);
    // inhomogeneous
    CHECK(run_cli("jac --poly x0^2+x1^3 --weights 1,1 --degree 3").exit_code == 2);
}

TEST_CASE("progress and timing stay off the data stream") {
    auto r = run_cli("jac --poly x0^3+x1^3+x2^3 --weights 1,1,1 --degree 3 --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);  // stdout must be pure JSON
    CHECK(j.at("status") == "ok");
    CHECK(!j.contains("timing"));
    CHECK(!j.at("result").contains("timing"));
}

TEST_CASE("job files drive the same computations") {
    std::string path = "cli_test_job.txt";
    {
        std::ofstream f(path);
        f << "# sextic cell with the correction term\n"
          << "command = hs-dim\n"
          << "poly = x4^2 + x0^6 + x1^6 + x2^6 + x3^6\n"
          << "weights = 1,1,1,1,3\n"
          << "degree = 6\n"
          << "t = 8\n"
          << "m = 0\n"
          << "format = json\n";
    }
    auto r = run_cli("run " + path);
    std::remove(path.c_str());
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("result").at("total") == 87);
}

TEST_CASE("csv bytes are deterministic") {
    std::string args =
        "hs-table --poly x0^3+x1^3+x2^3+x3^3 --weights 1,1,1,1 --degree 3 --t-min 0 --t-max 7 "
        "--m-range 0..2 --csv";
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("t,m,total", 0) == 0);
}
