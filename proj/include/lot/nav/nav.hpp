#pragma once

#include "lot/morph/morphism.hpp"
#include "lot/truth/truth.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lot::nav {

using logic::Sentence;
using truth::ClosedTheory;
using truth::TheoryLattice;

/// Deletes axioms and re-closes: clo(C ∖ A). The result is at or above C.
/// Throws ForeignElement for a theory outside `lat`, ValidationError for non-pool axioms.
ClosedTheory contract(const TheoryLattice& lat, const ClosedTheory& c, std::span<const Sentence> axioms);

/// Adds axioms and closes: clo(C ∪ A). The result is at or below C.
ClosedTheory expand(const TheoryLattice& lat, const ClosedTheory& c, std::span<const Sentence> axioms);

/// expand(contract(C, removed), added).
ClosedTheory revise(const TheoryLattice& lat, const ClosedTheory& c, std::span<const Sentence> removed,
                    std::span<const Sentence> added);

/// Renames the axioms of C along f and closes them in `dst`. Every translated axiom must
/// already be in dst's pool; otherwise ValidationError lists the missing sentences.
ClosedTheory analogy(const morph::LanguageMorphism& f, const TheoryLattice& src, const TheoryLattice& dst,
                     const ClosedTheory& c);

enum class StepKind { contract, expand, revise, analogy };

const char* to_string(StepKind k);

/// One move on the lattice, as recorded in a navigation log.
struct NavStep {
    StepKind kind;
    std::vector<Sentence> removed;
    std::vector<Sentence> added;
    std::optional<morph::LanguageMorphism> morphism;
    std::size_t source;  // theory id before the step
    std::size_t result;  // theory id after the step (in the destination lattice for analogy)
};

/// Applies moves to a current closed theory and keeps the log. Analogy steps stay inside
/// the navigator's lattice, so their morphism must be an endomorphism of its signature.
class Navigator {
public:
    Navigator(const TheoryLattice& lat, ClosedTheory start);

    [[nodiscard]] const ClosedTheory& current() const { return current_; }
    [[nodiscard]] const std::vector<NavStep>& log() const { return log_; }

    const ClosedTheory& contract(std::vector<Sentence> axioms);
    const ClosedTheory& expand(std::vector<Sentence> axioms);
    const ClosedTheory& revise(std::vector<Sentence> removed, std::vector<Sentence> added);
    const ClosedTheory& analogy(const morph::LanguageMorphism& f);

private:
    const TheoryLattice& lat_;
    ClosedTheory current_;
    std::vector<NavStep> log_;
};

/// A parsed script line. Sentences are referenced by 1-based pool labels `s1`, `s2`, ...
struct ScriptStep {
    std::size_t line;
    StepKind kind;
    std::vector<std::size_t> removed;  // pool indices
    std::vector<std::size_t> added;
    std::string morphism_path;         // analogy only
};

/// Script grammar, one step per line, `#` comments:
///     contract s1,s2
///     expand s4
///     revise s1 / s2        (delete before the slash, add after it)
///     analogy path/to/morphism.map
/// Throws ParseError with the line number.
std::vector<ScriptStep> parse_script(std::string_view text, std::size_t pool_size);

}  // namespace lot::nav
