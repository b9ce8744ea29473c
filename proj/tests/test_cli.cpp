// End-to-end checks of the command-line tool: spawns the built binary.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string output; // stdout only
};

RunResult run_cli(const std::string& args) {
    static const std::string binary = HADORD_CLI_PATH;
    fs::path out_path = fs::temp_directory_path() / "hadord_cli_stdout.txt";
    std::string command =
        binary + " " + args + " > " + out_path.string() + " 2>/dev/null";
    int status = std::system(command.c_str());
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    fs::remove(out_path);
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, buffer.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "hadord_cli_test") {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("orders: paley families") {
    RunResult r = run_cli("orders --families paley --limit 30");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "4\n8\n12\n20\n24\n28\n");
}

TEST_CASE("orders: c1 family and 2^k limit syntax") {
    RunResult r = run_cli("orders --families c1 --limit 20");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "1\n2\n4\n8\n12\n16\n20\n");
    RunResult r2 = run_cli("orders --families c1 --limit 2^4");
    REQUIRE(r2.exit_code == 0);
    REQUIRE(r2.output == "1\n2\n4\n8\n12\n16\n");
}

TEST_CASE("orders: missing families is a usage error") {
    RunResult r = run_cli("orders --limit 30");
    REQUIRE(r.exit_code == 1);
}

TEST_CASE("orders: unknown family is a usage error") {
    RunResult r = run_cli("orders --families bogus --limit 30");
    REQUIRE(r.exit_code == 1);
}

TEST_CASE("closure: cache write, hit, and config mismatch") {
    TempDir dir;
    std::string cache = (dir.path / "pool.hord").string();
    std::string base =
        "closure --families paley --rules kron,r2,r4 --limit 64 --cache " + cache;

    RunResult first = run_cli(base);
    REQUIRE(first.exit_code == 0);
    REQUIRE(first.output.find("members_from4=15") != std::string::npos);
    std::string bytes_after_first = slurp(cache);

    RunResult second = run_cli(base);
    REQUIRE(second.exit_code == 0);
    REQUIRE(second.output.find("cache hit") != std::string::npos);
    REQUIRE(slurp(cache) == bytes_after_first); // untouched on hit

    // a different configuration must not silently reuse the cache
    RunResult mismatch = run_cli(
        "closure --families paley --rules kron --limit 64 --cache " + cache);
    REQUIRE(mismatch.exit_code != 0);

    RunResult forced = run_cli(base + " --force");
    REQUIRE(forced.exit_code == 0);
    REQUIRE(forced.output.find("closure written") != std::string::npos);
    REQUIRE(slurp(cache) == bytes_after_first); // deterministic recompute
}

TEST_CASE("closure: kron-only example") {
    TempDir dir;
    std::string cache = (dir.path / "kron.hord").string();
    RunResult r = run_cli(
        "closure --families c1 --rules kron --limit 200 --cache " + cache);
    REQUIRE(r.exit_code == 0);
}

TEST_CASE("closure: memory budget produces a resource error") {
    TempDir dir;
    std::string cache = (dir.path / "big.hord").string();
    RunResult r = run_cli("closure --families paley --limit 2^30 --cache " +
                          cache + " --mem-budget 65536");
    REQUIRE(r.exit_code == 2);
}

TEST_CASE("figure1: deterministic output with reference columns") {
    TempDir dir;
    std::string out = (dir.path / "fig.csv").string();
    std::string cmd = "figure1 --limit 2^10 --out " + out;
    REQUIRE(run_cli(cmd).exit_code == 0);
    std::string first = slurp(out);
    REQUIRE(run_cli(cmd).exit_code == 0);
    REQUIRE(slurp(out) == first); // byte-identical rerun

    // header and the log2x=6 row with the decoded reference densities
    REQUIRE(first.find("log2x,x,red_count,red_density") != std::string::npos);
    REQUIRE(first.find("\n6.000000,64,11,0.171875,15,0.234375,") !=
            std::string::npos);
    REQUIRE(first.find("0.171900") != std::string::npos); // red ref at 64
    REQUIRE(first.find("0.234400") != std::string::npos); // blue ref at 64

    // curve ordering and the density ceiling at every sample
    std::istringstream lines(first);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'l') continue;
        double log2x, red, blue, black;
        unsigned long long x, rc, bc, kc;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%llu,%llu,%lf,%llu,%lf,%llu,%lf",
                            &log2x, &x, &rc, &red, &bc, &blue, &kc,
                            &black) == 8);
        REQUIRE(red <= blue + 1e-12);
        REQUIRE(blue <= black + 1e-12);
        REQUIRE(black <= 0.25 + 1.0 / double(x) + 1e-12);
        if (x <= 662) REQUIRE(black == Catch::Approx(0.25));
    }
}

TEST_CASE("figure1: limit below 2^6 is a usage error") {
    REQUIRE(run_cli("figure1 --limit 32").exit_code == 1);
}

TEST_CASE("figure1: fractional samples hit the dense reference path") {
    // log2(20) = 4.321928: the reference path has a point there (density 0.2)
    RunResult r = run_cli("figure1 --limit 64 --samples 4.321928,6");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("4.321928,20,4,0.200000,") != std::string::npos);
    REQUIRE(r.output.find(",0.200000,0.000000,") != std::string::npos);
    REQUIRE(r.output.find("6.000000,64,11,0.171875,15,0.234375,") !=
            std::string::npos);
}

TEST_CASE("bounds: all mode counts the trivial orders") {
    TempDir dir;
    std::string out1 = (dir.path / "b1.csv").string();
    std::string out2 = (dir.path / "b2.csv").string();
    REQUIRE(run_cli("bounds --limit 2^10 --samples 8 --families c1 --rules kron "
                    "--mode from4 --out " + out1).exit_code == 0);
    REQUIRE(run_cli("bounds --limit 2^10 --samples 8 --families c1 --rules kron "
                    "--mode all --out " + out2).exit_code == 0);
    // c1 contains 1 and 2, so the all-mode count exceeds from4 by exactly 2
    std::string s1 = slurp(out1), s2 = slurp(out2);
    REQUIRE(s1.find("\n256,64,") != std::string::npos);
    REQUIRE(s2.find("\n256,66,") != std::string::npos);
}

TEST_CASE("bounds: formula columns and domain-guard blanks") {
    TempDir dir;
    std::string out = (dir.path / "bounds.csv").string();
    RunResult r = run_cli(
        "bounds --limit 2^22 --samples 10,16,22 --families paley --out " + out);
    REQUIRE(r.exit_code == 0);
    std::string csv = slurp(out);
    REQUIRE(csv.find("x,count,density,paley_simple,paley_doubled,main_bound,ford_v") !=
            std::string::npos);
    // x = 1024 and 65536 sit below e^(e^e) ~ 3.81e6: empty main_bound cell
    REQUIRE(csv.find("\n1024,") != std::string::npos);
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("1024,", 0) == 0 || line.rfind("65536,", 0) == 0) {
            // ...,paley_simple,paley_doubled,,ford_v
            REQUIRE(line.find(",,") != std::string::npos);
        }
        if (line.rfind("4194304,", 0) == 0) {
            REQUIRE(line.find(",,") == std::string::npos); // 2^22 > e^(e^e)
        }
    }
    // doubled column is exactly twice the simple column
    std::istringstream again(csv);
    while (std::getline(again, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
        double simple, doubled;
        unsigned long long x, count;
        double dens;
        REQUIRE(std::sscanf(line.c_str(), "%llu,%llu,%lf,%lf,%lf", &x, &count,
                            &dens, &simple, &doubled) == 5);
        REQUIRE(doubled == Catch::Approx(2.0 * simple).epsilon(1e-9));
    }
}

TEST_CASE("verify: default suites pass, negative control fails") {
    RunResult ok = run_cli("verify --suites partition,exp_dom --seed 7");
    REQUIRE(ok.exit_code == 0);
    REQUIRE(ok.output.find("result,pass") != std::string::npos);

    RunResult neg =
        run_cli("verify --suites closure_oracle --self-test-negative");
    REQUIRE(neg.exit_code == 3);
    REQUIRE(neg.output.find("result,fail") != std::string::npos);

    RunResult filtered = run_cli("verify --suites eq9 --seed 7");
    REQUIRE(filtered.exit_code == 0);
    REQUIRE(filtered.output.find("eq9,") != std::string::npos);
    REQUIRE(filtered.output.find("partition,") == std::string::npos);
}

TEST_CASE("verify: unknown suite is a usage error") {
    REQUIRE(run_cli("verify --suites nonsense").exit_code == 1);
}
