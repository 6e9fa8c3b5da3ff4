#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// end-to-end checks of the command-line binary; ctest runs from the build
// directory, where the binary lives
namespace {

const char* kBin = "./lemon-billiards";

int run(const std::string& args, const std::string& out_file) {
    std::string cmd = std::string(kBin) + " " + args + " > " + out_file + " 2> cli_err.txt";
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
#ifdef _WIN32
    return rc;
#else
    return WEXITSTATUS(rc);
#endif
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool have_binary() {
    std::ifstream f(kBin);
    return f.good();
}

} // namespace

TEST_CASE("constants command emits JSON by default") {
    REQUIRE(have_binary());
    CHECK(run("constants", "cli_out1.txt") == 0);
    std::string s = slurp("cli_out1.txt");
    CHECK(s.find("\"b_crit\"") != std::string::npos);
    CHECK(s.find("\"alpha0\"") != std::string::npos);
    CHECK(s.find("\"results\"") != std::string::npos);
    CHECK(s.find("1.63476") != std::string::npos);
}

TEST_CASE("phase portrait CSV is deterministic and uses LF line endings") {
    REQUIRE(have_binary());
    std::string args = "phase --b 1.56 --seed 42 --grid 40 --iterations 300 --format csv";
    CHECK(run(args, "cli_out2a.txt") == 0);
    CHECK(run(args, "cli_out2b.txt") == 0);
    std::string a = slurp("cli_out2a.txt");
    CHECK(a == slurp("cli_out2b.txt"));
    CHECK(a.rfind("traj_id,step,phi,theta\n", 0) == 0);
    CHECK(a.find('\r') == std::string::npos);
    // a different seed changes the output
    CHECK(run("phase --b 1.56 --seed 43 --grid 40 --iterations 300 --format csv",
              "cli_out2c.txt") == 0);
    CHECK(a != slurp("cli_out2c.txt"));
}

TEST_CASE("svg output") {
    REQUIRE(have_binary());
    CHECK(run("phase --b 1.56 --seed 1 --grid 20 --iterations 100 --format svg",
              "cli_out3.txt") == 0);
    std::string s = slurp("cli_out3.txt");
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find("<circle") != std::string::npos);
}

TEST_CASE("periodic and manifold commands") {
    REQUIRE(have_binary());
    CHECK(run("periodic --b 1.6 --format json", "cli_out4.txt") == 0);
    std::string s = slurp("cli_out4.txt");
    CHECK(s.find("\"hyperbolic6\"") != std::string::npos);
    CHECK(s.find("\"half_trace\"") != std::string::npos);

    CHECK(run("manifold --b 1.54 --format json", "cli_out5.txt") == 0);
    std::string m = slurp("cli_out5.txt");
    CHECK(m.find("\"delta\"") != std::string::npos);
}

TEST_CASE("exit codes") {
    REQUIRE(have_binary());
    CHECK(run("--no-such-flag", "cli_out6.txt") == 2);
    CHECK(run("phase --b 3.0", "cli_out7.txt") == 2);
    CHECK(run("verify --filter alpha0", "cli_out8.txt") == 0);
}
