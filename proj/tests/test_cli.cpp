#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cli.hpp"
#include "cli_corpus.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out, err;
};

// In-process run from inside the fixture directory.
Result run(std::vector<std::string> args) {
    auto cwd = fs::current_path();
    fs::current_path(LOT_FIXTURES_DIR);
    std::ostringstream out, err;
    int status = lot::cli::run(args, out, err);
    fs::current_path(cwd);
    return {status, out.str(), err.str()};
}

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

// Runs the installed binary in a child process and captures stdout.
Result spawn(const std::vector<std::string>& args) {
    std::string cmd = "cd " + quote(LOT_FIXTURES_DIR) + " && " + quote(LOT_CLI_BINARY);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out, ""};
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("lattice text export lists the eight closed theories") {
    auto r = run({"lattice", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "fix.pool", "--format", "text"});
    CHECK(r.status == 0);
    CHECK(count(r.out, "theory ") == 8);
    CHECK(r.out.rfind("theory 0\n", 0) == 0);
    CHECK(r.out.find("theory 7\nmodels 0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15\n") != std::string::npos);
}

TEST_CASE("entail prints true and exits 0") {
    auto r = run({"entail", "--sig", "fix.sig", "--carriers", "E=a,b", "--theory", "t1.thy", "--query",
                  "exists x:E. P(x)"});
    CHECK(r.status == 0);
    CHECK(r.out == "true\n");
}

TEST_CASE("an empty context has one concept") {
    auto r = run({"ctx", "concepts", "--cxt", "empty.cxt"});
    CHECK(r.status == 0);
    CHECK(r.out == "0\t{}\t{}\n");
}

TEST_CASE("diagnostics name the file and line") {
    auto r = run({"lattice", "--sig", "bad.sig", "--carriers", "E=a", "--pool", "fix.pool"});
    CHECK(r.status == 2);
    CHECK(r.err.find("bad.sig:2:") != std::string::npos);
    r = run({"lattice", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "bad.pool"});
    CHECK(r.status == 2);
    CHECK(r.err.find("bad.pool:2:") != std::string::npos);
    CHECK(r.err.find("'S'") != std::string::npos);
}

TEST_CASE("the closure command and the analogy command") {
    auto r = run({"close", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "fix.pool", "--theory", "t1.thy"});
    CHECK(r.out == "exists x:E. P(x)\nforall x:E. P(x)\n");
    r = run({"analogy", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "swap.pool", "--morphism", "swap.map",
             "--theory", "t1.thy"});
    CHECK(r.status == 0);
    CHECK(r.out.find("exists x:E. Q(x)\nforall x:E. P(x) -> Q(x)\nforall x:E. Q(x)\n") != std::string::npos);
    r = run({"analogy", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "fix.pool", "--morphism", "swap.map",
             "--theory", "t1.thy"});
    CHECK(r.status == 2);
    CHECK(r.err.find("exists x:E. Q(x)") != std::string::npos);
}

TEST_CASE("cross-language analogy") {
    auto r = run({"analogy", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "fix.pool", "--dst-sig", "fix.sig",
                  "--dst-carriers", "E=a", "--dst-pool", "swap.pool", "--morphism", "swap.map", "--theory", "t1.thy"});
    CHECK(r.status == 0);
    // Over a one-element carrier, forall Q and exists Q coincide.
    CHECK(r.out.find("exists x:E. Q(x)") != std::string::npos);
    r = run({"analogy", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "fix.pool", "--dst-pool", "swap.pool",
             "--morphism", "swap.map", "--theory", "t1.thy"});
    CHECK(r.status == 2);
}

TEST_CASE("--out writes the file") {
    auto path = fs::temp_directory_path() / "lot_cli_out.dot";
    auto r = run({"lattice", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "fix.pool", "--format", "dot",
                  "--out", path.string()});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().rfind("digraph", 0) == 0);
    fs::remove(path);
}

TEST_CASE("every corpus case exits as documented, in-process and as a binary") {
    std::set<int> seen;
    for (const auto& c : cli_corpus::corpus()) {
        auto a = run(c.args);
        CHECK_MESSAGE(a.status == c.status, c.name << ": " << a.err);
        auto b = spawn(c.args);
        CHECK_MESSAGE(b.status == c.status, c.name);
        CHECK_MESSAGE(a.out == b.out, c.name);
        seen.insert(a.status);
    }
    CHECK(seen == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("outputs are byte-identical across runs and kernels") {
    for (const auto& c : cli_corpus::corpus()) {
        if (c.status >= 2) continue;
        auto first = spawn(c.args);
        auto second = spawn(c.args);
        CHECK_MESSAGE(first.out == second.out, c.name);
        auto args = c.args;
        args.push_back("--serial");
        CHECK_MESSAGE(spawn(args).out == first.out, c.name);
    }
}
