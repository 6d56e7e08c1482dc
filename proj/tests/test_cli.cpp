#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "sepsys/family.hpp"
#include "sepsys/io.hpp"
#include "sepsys/verify.hpp"

using namespace sepsys;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string cli() { return SEPSYS_CLI_PATH; }

Run run(const std::string& args, const std::string& stdin_text = "")
{
    namespace fs = std::filesystem;
    const fs::path in = fs::temp_directory_path() / ("sepsys_cli_test_input_" + std::to_string(getpid()));
    {
        std::ofstream f(in);
        f << stdin_text;
    }
    const std::string cmd = cli() + " " + args + " < " + in.string() + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

const char* kEightM4 =
    R"({"ground_size":4,"role":"dual","sets":[[],[0],[1],[0,2],[1,3],[0,2,3],[1,2,3],[0,1,2,3]]})";

} // namespace

TEST_CASE("verify reports PASS with witnesses")
{
    const Run r = run("verify --property nice --k 2", kEightM4);
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "PASS nice k=2 (8 witnesses)");
    CHECK(r.out.find("member 7: separator {0,1} key {0,1}") != std::string::npos);
}

TEST_CASE("verify reports FAIL with a counterexample")
{
    const Run r = run("verify --property separating", R"({"ground_size":2,"sets":[[0,1]]})");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL separating") == 0);
    CHECK(r.out.find("counterexample: 0 1") != std::string::npos);
}

TEST_CASE("construct output feeds verify")
{
    const Run hcs = run("construct --kind hcs --n 10 --k 2");
    REQUIRE(hcs.code == 0);
    const Run v = run("verify --property hcs --k 2", hcs.out);
    CHECK(v.code == 0);
    CHECK(v.out.find("PASS hcs k=2") == 0);

    const Run hs2 = run("construct --kind hs2 --n 8");
    REQUIRE(hs2.code == 0);
    const Family f = io::parse_family(hs2.out);
    CHECK(f.ground_size() == 8);
    CHECK(f.size() == 4);
    CHECK(is_k_hyperseparating(f, 2).holds);

    const Run text = run("construct --kind binary --n 4 --format text");
    CHECK(text.out == "4 2\n0101\n0011\n");
}

TEST_CASE("construct nice-small attaches the deterministic witnesses")
{
    const Run r = run("construct --kind nice-small --m 4");
    REQUIRE(r.code == 0);
    const io::FamilyDocument doc = io::parse_document(r.out);
    CHECK(doc.role == std::optional<std::string>("dual"));
    CHECK(doc.family.size() == 8);
    REQUIRE(doc.witnesses.size() == 8);
    for (const auto& w : doc.witnesses)
        CHECK(check_separator_witness(doc.family, w.member_index, w.witness, 2));
}

TEST_CASE("bounds line")
{
    const Run r = run("bounds --n 100 --k 2");
    CHECK(r.code == 0);
    CHECK(r.out == "8 ≤ f(100,2) ≤ 15 [pair-family]\n");
    CHECK(run("bounds --n 1 --k 2").code == 2);
}

TEST_CASE("search summaries")
{
    CHECK(first_line(run("search --problem g --m 5 --k 2").out) == "g(5,2) = 10 (exhausted)");
    CHECK(first_line(run("search --problem min-m --n 11 --k 2").out) == "f(11,2) = 6 (exhausted)");
    CHECK(first_line(run("search --problem pair-family --m 4 --k 2").out) == "pair-family(4,2) = 24 (exhausted)");
    CHECK(first_line(run("search --problem exists --m 5 --n 11 --k 2").out) == "exists(5,2,11): absent (exhausted)");
    CHECK(first_line(run("search --problem unique-subset --m 4 --k 2").out) == "unique-subset(4,2) = 6 (exhausted)");
    CHECK(run("search --problem g --m 3 --k 3").out.find("no reference value") != std::string::npos);
}

TEST_CASE("search output does not depend on threads")
{
    const Run a = run("search --problem g --m 5 --k 2 --threads 1");
    const Run b = run("search --problem g --m 5 --k 2 --threads 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("budget from the environment")
{
    const Run r = run("search --problem g --m 5 --k 2", "");
    CHECK(r.code == 0);
    setenv("SEPSYS_BUDGET_MS", "0", 1);
    const Run limited = run("search --problem g --m 5 --k 2");
    unsetenv("SEPSYS_BUDGET_MS");
    CHECK(first_line(limited.out).find("(budget exhausted)") != std::string::npos);
}

TEST_CASE("table rows")
{
    const Run r = run("table --n 21 --check-up-to 12");
    CHECK(r.code == 0);
    CHECK(r.out.find("\n10  5  [4 ≤ 5 ≤ 5]  search:5 ✓\n") != std::string::npos);
    CHECK(r.out.find("\n4  2  [2 ≤ 2 ≤ 4]  search:2 ✓\n") != std::string::npos);
    CHECK(r.out.find("\n21  7  [") != std::string::npos);
    CHECK(r.out.find("✗") == std::string::npos);
}

TEST_CASE("dual, switch and canon")
{
    const Run d = run("dual", R"({"ground_size":3,"role":"primal","sets":[[0,1],[1,2]]})");
    CHECK(d.out == "{\"ground_size\":2,\"role\":\"dual\",\"sets\":[[0],[0,1],[1]]}\n");
    const Run s = run("switch --element 0 --format text", "1 2\n0\n1\n");
    CHECK(s.out == "1 2\n1\n0\n");
    const Run c = run("canon --group perm-switch", R"({"ground_size":2,"sets":[[0,1]]})");
    CHECK(c.out == "{\"ground_size\":2,\"sets\":[[]]}\n");
}

TEST_CASE("usage and input errors exit with 2")
{
    CHECK(run("verify --property nice --k 2", R"({"ground_size":1,"sets":[[1]]})").code == 2);
    CHECK(run("verify --property nice", kEightM4).code == 2);
    CHECK(run("verify --property bogus", kEightM4).code == 2);
    CHECK(run("construct --kind nice-small --m 5").code == 2);
    CHECK(run("search --problem g --m 7 --k 2").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("table --check-up-to 13").code == 2);
}
