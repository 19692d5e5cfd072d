#include "cli.hpp"

#include "lot/error.hpp"
#include "lot/fca/io.hpp"
#include "lot/morph/infomorphism.hpp"
#include "lot/morph/io.hpp"
#include "lot/nav/nav.hpp"
#include "lot/truth/export.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace lot::cli {

namespace {

namespace fs = std::filesystem;

/// An input problem already phrased for the user, usually as `file:line: message`.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Reads and parses one file, qualifying every library complaint with the path.
template <class Parse>
auto load(const std::string& path, Parse parse) {
    std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.detail());
    } catch (const ValidationError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const SignatureMismatch& e) {
        throw InputError(path + ": " + e.what());
    }
}

struct Language {
    std::string sig, pool, models;
    std::vector<std::string> carriers;
};

struct Settings {
    std::string out;
    std::string format = "text";
    std::uint64_t cap_models = logic::default_model_cap;
    std::size_t cap_concepts = fca::default_concept_cap;
    bool serial = false;

    [[nodiscard]] Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
    [[nodiscard]] fca::LatticeOptions lattice() const { return {cap_concepts, exec()}; }
};

void add_language(CLI::App* cmd, Language& lang, const std::string& prefix, bool need_pool) {
    const std::string which = prefix.empty() ? "" : "target ";
    cmd->add_option("--" + prefix + "sig", lang.sig, which + "signature file")->required();
    auto* pool = cmd->add_option("--" + prefix + "pool", lang.pool, which + "sentence pool file");
    if (need_pool) pool->required();
    cmd->add_option("--" + prefix + "models", lang.models, which + "model file");
    cmd->add_option("--" + prefix + "carriers", lang.carriers, which + "carrier per sort, e.g. E=a,b (repeatable)");
}

logic::SignaturePtr load_signature(const std::string& path) {
    return load(path, [](const std::string& t) { return logic::parse_signature(t); });
}

std::vector<logic::Sentence> load_sentences(const logic::SignaturePtr& sig, const std::string& path) {
    if (path.empty()) return {};
    return load(path, [&](const std::string& t) { return logic::parse_sentence_list(sig, t); });
}

truth::TruthClassification build(const Language& lang, const logic::SignaturePtr& sig, const Settings& s,
                                 const std::string& prefix) {
    if (lang.models.empty() == lang.carriers.empty())
        throw InputError("exactly one of --" + prefix + "models or --" + prefix + "carriers is required");
    auto pool = load_sentences(sig, lang.pool);
    truth::BuildOptions opts{s.cap_models, s.exec()};
    if (!lang.models.empty()) {
        auto models = load(lang.models, [&](const std::string& t) { return logic::parse_models(sig, t); });
        try {
            return truth::TruthClassification::build(sig, std::move(models), std::move(pool), opts);
        } catch (const ValidationError& e) {
            throw InputError(lang.models + ": " + e.what());
        }
    }
    std::optional<logic::CarrierAssignment> carriers;
    try {
        carriers.emplace(logic::parse_carriers(*sig, lang.carriers));
    } catch (const ValidationError& e) {
        throw InputError("--" + prefix + "carriers: " + e.what());
    }
    try {
        return truth::TruthClassification::build(sig, *carriers, std::move(pool), opts);
    } catch (const ValidationError& e) {
        throw InputError((lang.pool.empty() ? "--" + prefix + "pool" : lang.pool) + ": " + e.what());
    }
}

truth::Theory load_theory(const logic::SignaturePtr& sig, const std::string& path) {
    return truth::Theory(sig, load_sentences(sig, path));
}

// The closure of a theory file; a sentence outside the pool is an input error.
truth::ClosedTheory close_file(const truth::TruthClassification& tc, const std::string& path) {
    auto t = load_theory(tc.signature(), path);
    try {
        return tc.closure(t);
    } catch (const ValidationError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string labels(const std::vector<std::size_t>& pool_indices) {
    std::string out;
    for (std::size_t k = 0; k < pool_indices.size(); ++k) out += (k ? "," : "") + ("s" + std::to_string(pool_indices[k] + 1));
    return out;
}

std::string theory_block(const truth::TheoryLattice& lat, const truth::ClosedTheory& c) {
    return "theory " + std::to_string(lat.id_of(c)) + "\n" + truth::write_theory(lat.classification(), c);
}

void require_format(const Settings& s, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (s.format == f) return;
    throw InputError("--format " + s.format + " is not available for this command");
}

// ---- subcommands; each returns its normal output and a status ----

struct Outcome {
    std::string text;
    int status = ok;
};

Outcome cmd_lattice(const Language& lang, const Settings& s) {
    require_format(s, {"text", "dot", "cxt"});
    auto sig = load_signature(lang.sig);
    truth::TheoryLattice lat(build(lang, sig, s, ""), s.lattice());
    if (s.format == "dot") return {truth::write_dot(lat)};
    if (s.format == "cxt") return {truth::write_cxt(lat)};
    return {truth::write_text(lat)};
}

Outcome cmd_close(const Language& lang, const Settings& s, const std::string& theory) {
    auto sig = load_signature(lang.sig);
    auto tc = build(lang, sig, s, "");
    return {truth::write_theory(tc, close_file(tc, theory))};
}

Outcome cmd_entail(const Language& lang, const Settings& s, const std::string& theory, const std::string& query) {
    auto sig = load_signature(lang.sig);
    auto tc = build(lang, sig, s, "");
    std::optional<logic::Sentence> phi;
    try {
        phi.emplace(logic::parse_sentence(sig, query));
    } catch (const ParseError& e) {
        throw InputError(std::string("--query: ") + e.detail());
    }
    bool yes = tc.entails(load_theory(sig, theory), *phi);
    return {yes ? "true\n" : "false\n", yes ? ok : negative};
}

Outcome cmd_leq(const Language& lang, const Settings& s, const std::string& t1, const std::string& t2) {
    auto sig = load_signature(lang.sig);
    auto tc = build(lang, sig, s, "");
    bool yes = close_file(tc, t2).intent().is_subset_of(close_file(tc, t1).intent());
    return {yes ? "true\n" : "false\n", yes ? ok : negative};
}

Outcome cmd_nav(const Language& lang, const Settings& s, const std::string& start, const std::string& script) {
    auto sig = load_signature(lang.sig);
    auto tc = build(lang, sig, s, "");
    truth::TheoryLattice lat(tc, s.lattice());
    auto steps = load(script, [&](const std::string& t) { return nav::parse_script(t, tc.pool().size()); });
    nav::Navigator navigator(lat, start.empty() ? lat.top() : close_file(tc, start));

    auto pick = [&](const std::vector<std::size_t>& idx) {
        std::vector<logic::Sentence> out;
        for (auto k : idx) out.push_back(tc.pool()[k]);
        return out;
    };
    std::string text = "start\n" + theory_block(lat, navigator.current());
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const auto& step = steps[k];
        std::string head = "step " + std::to_string(k + 1) + ": " + nav::to_string(step.kind);
        try {
            switch (step.kind) {
            case nav::StepKind::contract:
                navigator.contract(pick(step.removed));
                head += " " + labels(step.removed);
                break;
            case nav::StepKind::expand:
                navigator.expand(pick(step.added));
                head += " " + labels(step.added);
                break;
            case nav::StepKind::revise:
                navigator.revise(pick(step.removed), pick(step.added));
                head += " " + labels(step.removed) + " / " + labels(step.added);
                break;
            case nav::StepKind::analogy: {
                fs::path p = fs::path(script).parent_path() / step.morphism_path;
                auto f = load(p.string(), [&](const std::string& t) { return morph::parse_morphism(sig, sig, t); });
                navigator.analogy(f);
                head += " " + step.morphism_path;
                break;
            }
            }
        } catch (const ValidationError& e) {
            throw InputError(script + ":" + std::to_string(step.line) + ": " + e.what());
        }
        text += "\n" + head + "\n" + theory_block(lat, navigator.current());
    }
    return {text};
}

Outcome cmd_analogy(const Language& src, const Language& dst_in, const Settings& s, const std::string& morphism,
                    const std::string& theory) {
    auto sig = load_signature(src.sig);
    bool endo = dst_in.sig.empty();
    const Language& dst = endo ? src : dst_in;
    auto dsig = endo ? sig : load_signature(dst.sig);
    auto tc1 = build(src, sig, s, "");
    auto tc2 = endo ? tc1 : build(dst, dsig, s, "dst-");
    truth::TheoryLattice lat1(tc1, s.lattice());
    std::optional<truth::TheoryLattice> own;
    if (!endo) own.emplace(tc2, s.lattice());
    const truth::TheoryLattice& lat2 = endo ? lat1 : *own;
    auto f = load(morphism, [&](const std::string& t) { return morph::parse_morphism(sig, dsig, t); });
    auto c = close_file(tc1, theory);
    try {
        return {theory_block(lat2, nav::analogy(f, lat1, lat2, c))};
    } catch (const ValidationError& e) {
        throw InputError(morphism + ": " + e.what());
    }
}

std::string infomorphism_report(const morph::TruthInfomorphism& im) {
    const auto& a = im.source();
    const auto& b = im.target();
    std::string out = "infomorphism holds\ntypes\n";
    for (std::size_t k = 0; k < im.type_map().size(); ++k)
        out += a.pool()[k].key() + "  =>  " + b.pool()[im.type_map()[k]].key() + "\n";
    out += "instances\n";
    for (std::size_t k = 0; k < im.instance_map().size(); ++k)
        out += std::to_string(k) + " -> " + std::to_string(im.instance_map()[k]) + "\n";
    return out;
}

Outcome cmd_interp(const std::string& mode, const Language& src, const Language& dst, const Settings& s,
                   const std::string& interp, const std::string& theory, const std::string& theory2) {
    auto sig = load_signature(src.sig);
    auto dsig = load_signature(dst.sig);
    auto h = load(interp, [&](const std::string& t) { return morph::parse_interpretation(sig, dsig, t); });
    auto tc1 = build(src, sig, s, "");
    auto tc2 = build(dst, dsig, s, "dst-");
    std::optional<morph::TruthInfomorphism> im;
    try {
        im.emplace(h, tc1, tc2, s.exec());
    } catch (const ValidationError& e) {
        if (mode == "check") return {std::string("no infomorphism: ") + e.what() + "\n", negative};
        throw InputError(interp + ": " + e.what());
    } catch (const ConsistencyError& e) {
        if (mode == "check") return {std::string("no infomorphism: ") + e.what() + "\n", negative};
        throw;
    }
    if (mode == "check") return {infomorphism_report(*im)};

    truth::TheoryLattice lat1(tc1, s.lattice()), lat2(tc2, s.lattice());
    morph::ConceptMorphism cm(*im, lat1, lat2, s.exec());
    std::string out;
    if (!theory.empty()) out += "dir\n" + theory_block(lat2, cm.dir(close_file(tc1, theory)));
    if (!theory2.empty()) out += (out.empty() ? "" : "\n") + ("inv\n" + theory_block(lat1, cm.inv(close_file(tc2, theory2))));
    if (theory.empty() && theory2.empty()) {
        for (std::size_t k = 0; k < cm.dir_ids().size(); ++k)
            out += "dir " + std::to_string(k) + " -> " + std::to_string(cm.dir_ids()[k]) + "\n";
        for (std::size_t k = 0; k < cm.inv_ids().size(); ++k)
            out += "inv " + std::to_string(k) + " -> " + std::to_string(cm.inv_ids()[k]) + "\n";
    }
    return {out};
}

Outcome cmd_concepts(const Settings& s, const std::string& cxt) {
    require_format(s, {"text", "dot", "cxt"});
    auto named = load(cxt, [](const std::string& t) { return fca::read_cxt(t); });
    if (s.format == "cxt") return {fca::write_cxt(named.ctx, named.name)};
    fca::ConceptLattice lat(named.ctx, s.lattice());
    if (s.format == "dot") return {fca::write_dot(lat)};
    return {fca::write_concepts(lat)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lattices of theories over finite first-order languages", "lot"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    app.add_option("--out", s.out, "write the result to this file instead of stdout");
    app.add_option("--format", s.format, "text, dot or cxt")->check(CLI::IsMember({"text", "dot", "cxt"}));
    app.add_option("--cap-models", s.cap_models, "refuse to enumerate more models than this");
    app.add_option("--cap-concepts", s.cap_concepts, "refuse to build lattices with more concepts than this");
    app.add_flag("--serial", s.serial, "use the serial reference kernels");

    Language src, dst;
    std::string theory, theory2, query, script, morphism, interp, cxt;
    std::function<Outcome()> action;

    auto* lattice = app.add_subcommand("lattice", "build and export the lattice of theories");
    add_language(lattice, src, "", true);
    lattice->callback([&] { action = [&] { return cmd_lattice(src, s); }; });

    auto* close = app.add_subcommand("close", "print the closure of a theory");
    add_language(close, src, "", true);
    close->add_option("--theory", theory, "theory file")->required();
    close->callback([&] { action = [&] { return cmd_close(src, s, theory); }; });

    auto* entail = app.add_subcommand("entail", "does the theory entail the query? exit 0 yes, 1 no");
    add_language(entail, src, "", false);
    entail->add_option("--theory", theory, "theory file")->required();
    entail->add_option("--query", query, "sentence")->required();
    entail->callback([&] { action = [&] { return cmd_entail(src, s, theory, query); }; });

    auto* leq = app.add_subcommand("leq", "is theory below theory2 (clo ⊇ clo2)? exit 0 yes, 1 no");
    add_language(leq, src, "", true);
    leq->add_option("--theory", theory, "first theory file")->required();
    leq->add_option("--theory2", theory2, "second theory file")->required();
    leq->callback([&] { action = [&] { return cmd_leq(src, s, theory, theory2); }; });

    auto* navc = app.add_subcommand("nav", "replay a navigation script");
    add_language(navc, src, "", true);
    navc->add_option("--theory", theory, "start theory (default: the top)");
    navc->add_option("--script", script, "script file")->required();
    navc->callback([&] { action = [&] { return cmd_nav(src, s, theory, script); }; });

    auto* analogy = app.add_subcommand("analogy", "transport a theory along a language morphism");
    add_language(analogy, src, "", true);
    analogy->add_option("--dst-sig", dst.sig, "target signature (default: the source language)");
    analogy->add_option("--dst-pool", dst.pool, "target sentence pool");
    analogy->add_option("--dst-models", dst.models, "target model file");
    analogy->add_option("--dst-carriers", dst.carriers, "target carriers");
    analogy->add_option("--morphism", morphism, "morphism file")->required();
    analogy->add_option("--theory", theory, "theory file")->required();
    analogy->callback([&] {
        if (dst.sig.empty() && (!dst.pool.empty() || !dst.models.empty() || !dst.carriers.empty()))
            throw CLI::ValidationError("--dst-*", "target language options need --dst-sig");
        action = [&] { return cmd_analogy(src, dst, s, morphism, theory); };
    });

    auto* interpc = app.add_subcommand("interp", "interpretations between two languages");
    interpc->require_subcommand(1);
    for (const char* mode : {"check", "apply"}) {
        auto* sub = interpc->add_subcommand(mode, std::string(mode) == "check"
                                                      ? "verify the induced infomorphism; exit 1 when it fails"
                                                      : "apply the induced adjoint pair to theories");
        add_language(sub, src, "", true);
        add_language(sub, dst, "dst-", true);
        sub->add_option("--interp", interp, "interpretation file")->required();
        if (std::string(mode) == "apply") {
            sub->add_option("--theory", theory, "source theory to map forward");
            sub->add_option("--theory2", theory2, "target theory to map back");
        }
        std::string m = mode;
        sub->callback([&, m] { action = [&, m] { return cmd_interp(m, src, dst, s, interp, theory, theory2); }; });
    }

    auto* ctx = app.add_subcommand("ctx", "formal-context utilities");
    ctx->require_subcommand(1);
    auto* concepts = ctx->add_subcommand("concepts", "concept lattice of a .cxt file");
    concepts->add_option("--cxt", cxt, "Burmeister context file")->required();
    concepts->callback([&] { action = [&] { return cmd_concepts(s, cxt); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    try {
        Outcome result = action();
        if (s.out.empty()) {
            out << result.text;
        } else {
            std::ofstream file(s.out, std::ios::binary);
            if (!file) throw InputError(s.out + ": cannot write file");
            file << result.text;
        }
        return result.status;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const CapExceeded& e) {
        err << "refused: " << e.what() << "\n";
        return cap_refused;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
}

}  // namespace lot::cli
