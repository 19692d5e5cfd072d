#pragma once

#include "lot/exec.hpp"
#include "lot/fca/classification.hpp"
#include "lot/morph/morphism.hpp"
#include "lot/truth/truth.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lot::morph {

/// Outcome of an infomorphism check; `witness` is the first failing (instance of B,
/// type of A) pair in row-major order.
struct InfomorphismCheck {
    bool holds = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;

    explicit operator bool() const { return holds; }
};

/// For all b ∈ inst(B), t ∈ typ(A): instance_map(b) ⊨_A t iff b ⊨_B type_map(t).
/// type_map: typ(A) → typ(B), instance_map: inst(B) → inst(A), as positions.
InfomorphismCheck check_infomorphism(const fca::Classification& a, const fca::Classification& b,
                                     std::span<const std::size_t> type_map, std::span<const std::size_t> instance_map,
                                     Exec exec = Exec::parallel);

/// Same check on id maps; throws ValidationError for an unmapped element and
/// ForeignElement for unknown ids.
InfomorphismCheck check_infomorphism(const fca::Classification& a, const fca::Classification& b,
                                     const std::map<std::string, std::string>& type_map,
                                     const std::map<std::string, std::string>& instance_map,
                                     Exec exec = Exec::parallel);

/// The infomorphism induced by an interpretation between two truth classifications:
/// sentence translation forward, reducts backward.
class TruthInfomorphism {
public:
    /// Throws ValidationError when a translated pool sentence is missing from the target
    /// pool or a reduct is missing from the source models, and ConsistencyError when the
    /// satisfaction transfer fails (with the witness pair).
    TruthInfomorphism(const Interpretation& h, truth::TruthClassification source, truth::TruthClassification target,
                      Exec exec = Exec::parallel);

    [[nodiscard]] const truth::TruthClassification& source() const { return source_; }
    [[nodiscard]] const truth::TruthClassification& target() const { return target_; }
    /// Source pool index → target pool index.
    [[nodiscard]] const std::vector<std::size_t>& type_map() const { return type_map_; }
    /// Target model index → source model index.
    [[nodiscard]] const std::vector<std::size_t>& instance_map() const { return instance_map_; }

private:
    truth::TruthClassification source_, target_;
    std::vector<std::size_t> type_map_, instance_map_;
};

/// The adjoint pair between the two lattices of theories:
/// dir(C1) = target closure of the translated sentences of C1,
/// inv(C2) = the source sentences whose translation lies in C2.
/// The constructor verifies that inv lands on closed theories, that both maps are
/// monotone, and that dir(C1) ⊆ C2 ⇔ C1 ⊆ inv(C2) for every pair.
class ConceptMorphism {
public:
    ConceptMorphism(const TruthInfomorphism& im, const truth::TheoryLattice& source, const truth::TheoryLattice& target,
                    Exec exec = Exec::parallel);

    /// Index form: theory ids of the source lattice → ids of the target lattice, and back.
    [[nodiscard]] const std::vector<std::size_t>& dir_ids() const { return dir_; }
    [[nodiscard]] const std::vector<std::size_t>& inv_ids() const { return inv_; }

    [[nodiscard]] truth::ClosedTheory dir(const truth::ClosedTheory& c1) const;
    [[nodiscard]] truth::ClosedTheory inv(const truth::ClosedTheory& c2) const;

private:
    truth::TheoryLattice source_;
    truth::TheoryLattice target_;
    std::vector<std::size_t> dir_, inv_;
};

/// Every axiom of T1, translated along f, is entailed by T2 in the target classification.
bool is_theory_morphism(const LanguageMorphism& f, const truth::Theory& t1, const truth::Theory& t2,
                        const truth::TruthClassification& target);

}  // namespace lot::morph
