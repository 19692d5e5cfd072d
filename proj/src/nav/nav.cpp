#include "lot/nav/nav.hpp"

#include "lot/error.hpp"
#include "text_util.hpp"

#include <charconv>

namespace lot::nav {

ClosedTheory contract(const TheoryLattice& lat, const ClosedTheory& c, std::span<const Sentence> axioms) {
    lat.check_member(c);
    const auto& tc = lat.classification();
    auto remove = tc.pool_subset(axioms);
    return tc.closure(c.intent() - remove);
}

ClosedTheory expand(const TheoryLattice& lat, const ClosedTheory& c, std::span<const Sentence> axioms) {
    lat.check_member(c);
    const auto& tc = lat.classification();
    auto add = tc.pool_subset(axioms);
    return tc.closure(c.intent() | add);
}

ClosedTheory revise(const TheoryLattice& lat, const ClosedTheory& c, std::span<const Sentence> removed,
                    std::span<const Sentence> added) {
    // Validate both payloads before moving.
    (void)lat.classification().pool_subset(added);
    return expand(lat, contract(lat, c, removed), added);
}

ClosedTheory analogy(const morph::LanguageMorphism& f, const TheoryLattice& src, const TheoryLattice& dst,
                     const ClosedTheory& c) {
    src.check_member(c);
    if (!logic::same_signature(f.source(), src.classification().signature()) ||
        !logic::same_signature(f.target(), dst.classification().signature()))
        throw SignatureMismatch("morphism does not connect the two lattices' signatures");
    const auto& dtc = dst.classification();
    fca::Bits image(dtc.pool().size());
    std::string missing;
    for (const auto& phi : src.classification().sentences(c)) {
        auto renamed = morph::translate(f, phi);
        if (auto t = dtc.find_sentence(renamed))
            image.set(*t);
        else
            missing += "\n  " + renamed.key() + "   (renaming of " + phi.key() + ")";
    }
    if (!missing.empty())
        throw ValidationError("renamed axioms are not in the destination pool; extend the pool and rebuild:" + missing);
    return dtc.closure(image);
}

const char* to_string(StepKind k) {
    switch (k) {
    case StepKind::contract: return "contract";
    case StepKind::expand: return "expand";
    case StepKind::revise: return "revise";
    case StepKind::analogy: return "analogy";
    }
    return "?";
}

Navigator::Navigator(const TheoryLattice& lat, ClosedTheory start) : lat_(lat), current_(std::move(start)) {
    lat_.check_member(current_);
}

const ClosedTheory& Navigator::contract(std::vector<Sentence> axioms) {
    auto next = nav::contract(lat_, current_, axioms);
    log_.push_back({StepKind::contract, std::move(axioms), {}, std::nullopt, lat_.id_of(current_), lat_.id_of(next)});
    current_ = std::move(next);
    return current_;
}

const ClosedTheory& Navigator::expand(std::vector<Sentence> axioms) {
    auto next = nav::expand(lat_, current_, axioms);
    log_.push_back({StepKind::expand, {}, std::move(axioms), std::nullopt, lat_.id_of(current_), lat_.id_of(next)});
    current_ = std::move(next);
    return current_;
}

const ClosedTheory& Navigator::revise(std::vector<Sentence> removed, std::vector<Sentence> added) {
    auto next = nav::revise(lat_, current_, removed, added);
    log_.push_back({StepKind::revise, std::move(removed), std::move(added), std::nullopt, lat_.id_of(current_),
                    lat_.id_of(next)});
    current_ = std::move(next);
    return current_;
}

const ClosedTheory& Navigator::analogy(const morph::LanguageMorphism& f) {
    auto next = nav::analogy(f, lat_, lat_, current_);
    log_.push_back({StepKind::analogy, {}, {}, f, lat_.id_of(current_), lat_.id_of(next)});
    current_ = std::move(next);
    return current_;
}

namespace {

std::vector<std::size_t> parse_labels(std::size_t lineno, std::string_view list, std::size_t pool_size) {
    std::vector<std::size_t> out;
    list = trim(list);
    if (list.empty()) return out;
    for (auto part : split(list, ',')) {
        auto label = trim(part);
        std::size_t n = 0;
        if (label.size() < 2 || label[0] != 's')
            throw ParseError(lineno, "expected a pool label like s1, got '" + std::string(label) + "'");
        auto [ptr, ec] = std::from_chars(label.data() + 1, label.data() + label.size(), n);
        if (ec != std::errc{} || ptr != label.data() + label.size() || n == 0)
            throw ParseError(lineno, "expected a pool label like s1, got '" + std::string(label) + "'");
        if (n > pool_size)
            throw ParseError(lineno, "label '" + std::string(label) + "' is beyond the pool (" +
                                         std::to_string(pool_size) + " sentences)");
        out.push_back(n - 1);
    }
    return out;
}

}  // namespace

std::vector<ScriptStep> parse_script(std::string_view text, std::size_t pool_size) {
    std::vector<ScriptStep> out;
    for (const auto& [lineno, raw] : numbered_lines(text)) {
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        auto [word, rest] = split_word(line);
        ScriptStep step{lineno, StepKind::contract, {}, {}, {}};
        if (word == "contract") {
            step.removed = parse_labels(lineno, rest, pool_size);
        } else if (word == "expand") {
            step.kind = StepKind::expand;
            step.added = parse_labels(lineno, rest, pool_size);
        } else if (word == "revise") {
            step.kind = StepKind::revise;
            auto slash = rest.find('/');
            if (slash == std::string_view::npos) throw ParseError(lineno, "expected 'revise DELETE / ADD'");
            step.removed = parse_labels(lineno, rest.substr(0, slash), pool_size);
            step.added = parse_labels(lineno, rest.substr(slash + 1), pool_size);
        } else if (word == "analogy") {
            step.kind = StepKind::analogy;
            step.morphism_path = std::string(trim(rest));
            if (step.morphism_path.empty()) throw ParseError(lineno, "expected 'analogy MORPHISM_FILE'");
        } else {
            throw ParseError(lineno, "unknown step '" + std::string(word) + "'");
        }
        out.push_back(std::move(step));
    }
    return out;
}

}  // namespace lot::nav
