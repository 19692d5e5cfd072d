#pragma once

// The fixture command lines shared by the CLI tests and the acceptance suite.

#include <string>
#include <vector>

namespace cli_corpus {

struct Case {
    std::string name;
    std::vector<std::string> args;  // relative to the fixture directory
    int status;
};

inline std::vector<Case> corpus() {
    const std::vector<std::string> fix{"--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "fix.pool"};
    const std::vector<std::string> swap{"--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "swap.pool"};
    const std::vector<std::string> interp{"--sig",         "int.sig", "--carriers",     "E=a,b",     "--pool",
                                          "int.pool",      "--dst-sig", "fix.sig",      "--dst-carriers", "E=a,b",
                                          "--dst-pool",    "int2.pool"};
    auto with = [](std::vector<std::string> head, std::vector<std::string> base, std::vector<std::string> tail) {
        head.insert(head.end(), base.begin(), base.end());
        head.insert(head.end(), tail.begin(), tail.end());
        return head;
    };
    return {
        {"lattice-text", with({"lattice"}, fix, {"--format", "text"}), 0},
        {"lattice-dot", with({"lattice"}, fix, {"--format", "dot"}), 0},
        {"lattice-cxt", with({"lattice"}, fix, {"--format", "cxt"}), 0},
        {"lattice-swap", with({"lattice"}, swap, {}), 0},
        {"lattice-models", {"lattice", "--sig", "fix.sig", "--models", "three.models", "--pool", "fix.pool"}, 0},
        {"close", with({"close"}, fix, {"--theory", "t1.thy"}), 0},
        {"entail-yes",
         {"entail", "--sig", "fix.sig", "--carriers", "E=a,b", "--theory", "t1.thy", "--query", "exists x:E. P(x)"},
         0},
        {"entail-no",
         {"entail", "--sig", "fix.sig", "--carriers", "E=a,b", "--theory", "t3.thy", "--query", "forall x:E. P(x)"},
         1},
        {"leq-yes", with({"leq"}, fix, {"--theory", "t1.thy", "--theory2", "t3.thy"}), 0},
        {"leq-no", with({"leq"}, fix, {"--theory", "t1.thy", "--theory2", "t2.thy"}), 1},
        {"nav-tour", with({"nav"}, fix, {"--script", "tour.nav"}), 0},
        {"nav-swap", with({"nav"}, swap, {"--script", "swap.nav"}), 0},
        {"analogy", with({"analogy"}, swap, {"--morphism", "swap.map", "--theory", "t1.thy"}), 0},
        {"interp-check", with({"interp", "check"}, interp, {"--interp", "h.interp"}), 0},
        {"interp-check-no",
         {"interp", "check", "--sig", "int.sig", "--carriers", "E=a,b", "--pool", "int.pool", "--dst-sig", "fix.sig",
          "--dst-carriers", "E=a,b", "--dst-pool", "fix.pool", "--interp", "h.interp"},
         1},
        {"interp-apply", with({"interp", "apply"}, interp, {"--interp", "h.interp", "--theory", "int.thy"}), 0},
        {"interp-table", with({"interp", "apply"}, interp, {"--interp", "p.interp"}), 0},
        {"ctx-empty", {"ctx", "concepts", "--cxt", "empty.cxt"}, 0},
        {"ctx-fix-text", {"ctx", "concepts", "--cxt", "fix.cxt"}, 0},
        {"ctx-fix-dot", {"ctx", "concepts", "--cxt", "fix.cxt", "--format", "dot"}, 0},
        {"ctx-fix-cxt", {"ctx", "concepts", "--cxt", "fix.cxt", "--format", "cxt"}, 0},
        {"bad-signature", {"lattice", "--sig", "bad.sig", "--carriers", "E=a", "--pool", "fix.pool"}, 2},
        {"bad-pool", {"lattice", "--sig", "fix.sig", "--carriers", "E=a,b", "--pool", "bad.pool"}, 2},
        {"missing-file", {"lattice", "--sig", "nowhere.sig", "--carriers", "E=a", "--pool", "fix.pool"}, 2},
        {"no-models", {"lattice", "--sig", "fix.sig", "--pool", "fix.pool"}, 2},
        {"bad-query",
         {"entail", "--sig", "fix.sig", "--carriers", "E=a,b", "--theory", "t1.thy", "--query", "forall x:E. S(x)"},
         2},
        {"unknown-command", {"frobnicate"}, 2},
        {"model-cap", {"lattice", "--sig", "big.sig", "--carriers", "E=a,b,c", "--pool", "empty.pool"}, 3},
        {"concept-cap", {"ctx", "concepts", "--cxt", "contranominal.cxt", "--cap-concepts", "1000"}, 3},
    };
}

}  // namespace cli_corpus
