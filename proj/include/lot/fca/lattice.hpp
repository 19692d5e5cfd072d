#pragma once

#include "lot/exec.hpp"
#include "lot/fca/classification.hpp"
#include "lot/fca/kernels.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace lot::fca {

/// A formal concept. Both halves are stored; the constructor of ConceptLattice checks
/// extent = intent′ and intent = extent′.
struct FormalConcept {
    Bits extent;
    Bits intent;

    bool operator==(const FormalConcept&) const = default;
};

struct LatticeOptions {
    std::size_t cap = default_concept_cap;
    Exec exec = Exec::parallel;
};

struct DensityReport {
    bool join_dense = false;  // every concept is the join of the instance concepts below it
    bool meet_dense = false;  // every concept is the meet of the type concepts above it
};

/// The concept lattice of a classification. Concepts are held in canonical order:
/// ascending extent size, ties broken by the lexicographic order of the sorted extent.
/// Index 0 is therefore the bottom and the last index the top.
class ConceptLattice {
public:
    /// Throws CapExceeded when the classification has more than `opts.cap` concepts.
    explicit ConceptLattice(Classification ctx, LatticeOptions opts = {});

    [[nodiscard]] const Classification& context() const { return ctx_; }
    [[nodiscard]] const std::vector<FormalConcept>& concepts() const { return concepts_; }
    [[nodiscard]] const FormalConcept& concept_at(std::size_t i) const { return concepts_[i]; }
    [[nodiscard]] std::size_t size() const { return concepts_.size(); }

    [[nodiscard]] std::size_t top() const { return concepts_.size() - 1; }
    [[nodiscard]] std::size_t bottom() const { return 0; }

    /// Subconcept order: extent(a) ⊆ extent(b).
    [[nodiscard]] bool leq(std::size_t a, std::size_t b) const {
        return concepts_[a].extent.is_subset_of(concepts_[b].extent);
    }

    [[nodiscard]] std::optional<std::size_t> find(const FormalConcept& c) const;
    [[nodiscard]] std::optional<std::size_t> find_intent(const Bits& intent) const;
    /// Throws ForeignElement when `c` is not a concept of this lattice.
    [[nodiscard]] std::size_t index_of(const FormalConcept& c) const;

    /// ι(i) = ({i}″, {i}′) and τ(t) = ({t}′, {t}″), as concept indices.
    [[nodiscard]] std::size_t instance_concept(std::size_t instance) const { return iota_[instance]; }
    [[nodiscard]] std::size_t type_concept(std::size_t type) const { return tau_[type]; }

    /// Infimum: (∩ extents, (∪ intents)″). The meet of nothing is the top.
    [[nodiscard]] std::size_t meet(std::span<const std::size_t> cs) const;
    /// Supremum: ((∪ extents)″, ∩ intents). The join of nothing is the bottom.
    [[nodiscard]] std::size_t join(std::span<const std::size_t> cs) const;

    /// Upper covers of every concept (Hasse diagram), each list ascending.
    [[nodiscard]] std::vector<std::vector<std::size_t>> upper_covers() const;

    [[nodiscard]] DensityReport density() const;

private:
    Classification ctx_;
    std::vector<FormalConcept> concepts_;
    std::map<Bits, std::size_t> by_intent_;
    std::vector<std::size_t> iota_;
    std::vector<std::size_t> tau_;
};

/// Name- and value-based front ends matching the classification vocabulary.
inline ConceptLattice concept_lattice(const Classification& ctx, LatticeOptions opts = {}) {
    return ConceptLattice(ctx, opts);
}
FormalConcept lattice_meet(const ConceptLattice& lat, std::span<const FormalConcept> cs);
FormalConcept lattice_join(const ConceptLattice& lat, std::span<const FormalConcept> cs);
FormalConcept instance_embedding(const ConceptLattice& lat, std::string_view instance);
FormalConcept type_embedding(const ConceptLattice& lat, std::string_view type);

/// Recovers a classification from a lattice: i ⊨ t iff ι(i) ≤ τ(t).
Classification basic_theorem_roundtrip(const ConceptLattice& lat);

/// Strict weak order used for the canonical concept order.
bool canonical_less(const Bits& extent_a, const Bits& extent_b);

}  // namespace lot::fca
