#pragma once

#include "lot/exec.hpp"
#include "lot/fca/classification.hpp"
#include "lot/fca/lattice.hpp"
#include "lot/logic/formula.hpp"
#include "lot/logic/structure.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lot::truth {

using fca::Bits;
using logic::Sentence;
using logic::SignaturePtr;
using logic::Structure;

/// A set of sentences over one signature. Duplicates (up to α-equivalence) collapse.
class Theory {
public:
    explicit Theory(SignaturePtr sig, std::vector<Sentence> axioms = {});

    [[nodiscard]] const SignaturePtr& signature() const { return sig_; }
    [[nodiscard]] const std::vector<Sentence>& axioms() const { return axioms_; }

private:
    SignaturePtr sig_;
    std::vector<Sentence> axioms_;
};

/// An intent of a truth classification: a pool-relative closed theory. Carries the id of
/// the classification it came from so that foreign theories are rejected.
class ClosedTheory {
public:
    ClosedTheory(std::uint64_t owner, Bits intent) : owner_(owner), intent_(std::move(intent)) {}

    [[nodiscard]] std::uint64_t owner() const { return owner_; }
    [[nodiscard]] const Bits& intent() const { return intent_; }

    bool operator==(const ClosedTheory&) const = default;

private:
    std::uint64_t owner_;
    Bits intent_;
};

struct BuildOptions {
    std::uint64_t model_cap = logic::default_model_cap;
    Exec exec = Exec::parallel;
};

/// Incidence rows (one per model, over the pool) of the satisfaction relation.
std::vector<Bits> materialize_incidence(std::span<const Structure> models, std::span<const Sentence> pool, Exec exec);

/// The classification ⟨pool, models, ⊨⟩. Immutable; copies share state and identity.
class TruthClassification {
public:
    /// Throws SignatureMismatch, ValidationError (empty model list, duplicate model or
    /// pool sentence).
    static TruthClassification build(SignaturePtr sig, std::vector<Structure> models, std::vector<Sentence> pool,
                                     BuildOptions opts = {});
    /// Models are enumerate_structures(sig, carriers); throws CapExceeded.
    static TruthClassification build(SignaturePtr sig, const logic::CarrierAssignment& carriers,
                                     std::vector<Sentence> pool, BuildOptions opts = {});

    [[nodiscard]] std::uint64_t id() const { return data_->id; }
    [[nodiscard]] const SignaturePtr& signature() const { return data_->sig; }
    [[nodiscard]] const std::vector<Structure>& models() const { return data_->models; }
    [[nodiscard]] const std::vector<Sentence>& pool() const { return data_->pool; }
    [[nodiscard]] const fca::Classification& classification() const { return data_->ctx; }

    [[nodiscard]] std::optional<std::size_t> find_sentence(const Sentence& s) const;
    [[nodiscard]] std::optional<std::size_t> find_model(const Structure& m) const;
    /// Throws ValidationError naming the sentence and suggesting a pool extension.
    [[nodiscard]] std::size_t sentence_index(const Sentence& s) const;
    [[nodiscard]] Bits pool_subset(std::span<const Sentence> sentences) const;

    /// Models satisfying every sentence (pool membership not required).
    [[nodiscard]] Bits models_of(std::span<const Sentence> sentences) const;
    [[nodiscard]] Bits models_of(const Bits& pool_subset) const;
    /// Pool sentences true in every model of the set.
    [[nodiscard]] Bits theory_of_models(const Bits& models) const;

    /// clo(T) = T″; axioms must lie in the pool.
    [[nodiscard]] ClosedTheory closure(const Theory& t) const;
    [[nodiscard]] ClosedTheory closure(const Bits& pool_subset) const;
    /// Every model of T satisfies φ. Neither T nor φ needs to be in the pool.
    [[nodiscard]] bool entails(const Theory& t, const Sentence& phi) const;
    /// T1 ≤ T2 iff clo(T1) ⊇ clo(T2); axioms must lie in the pool.
    [[nodiscard]] bool theory_leq(const Theory& t1, const Theory& t2) const;

    /// Object concept: the pool theory of a model.
    [[nodiscard]] ClosedTheory object_concept(std::size_t model) const;
    /// Attribute concept: the closure of a single pool sentence.
    [[nodiscard]] ClosedTheory attribute_concept(const Sentence& s) const;

    [[nodiscard]] std::vector<Sentence> sentences(const Bits& pool_subset) const;
    [[nodiscard]] std::vector<Sentence> sentences(const ClosedTheory& c) const { return sentences(c.intent()); }
    /// Models of a closed theory.
    [[nodiscard]] Bits extent(const ClosedTheory& c) const;
    /// Throws ForeignElement unless `c` is a closed theory of this classification.
    void check_owned(const ClosedTheory& c) const;

private:
    struct Data {
        std::uint64_t id;
        SignaturePtr sig;
        std::vector<Structure> models;
        std::vector<Sentence> pool;
        fca::Classification ctx;
        std::map<std::string, std::size_t> pool_index;
        std::map<Structure, std::size_t> model_index;
    };
    explicit TruthClassification(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

    std::shared_ptr<const Data> data_;
};

/// The lattice of closed theories. Theory ids are the concept indices of the underlying
/// concept lattice: id 0 is the bottom (largest theory), the last id the top.
class TheoryLattice {
public:
    explicit TheoryLattice(TruthClassification tc, fca::LatticeOptions opts = {});

    [[nodiscard]] const TruthClassification& classification() const { return tc_; }
    [[nodiscard]] const fca::ConceptLattice& concepts() const { return lattice_; }
    [[nodiscard]] std::size_t size() const { return theories_.size(); }
    [[nodiscard]] const std::vector<ClosedTheory>& theories() const { return theories_; }
    [[nodiscard]] const ClosedTheory& theory(std::size_t id) const { return theories_[id]; }

    /// Throws ForeignElement.
    [[nodiscard]] std::size_t id_of(const ClosedTheory& c) const;
    void check_member(const ClosedTheory& c) const { (void)id_of(c); }

    /// c1 ≼ c2 iff c1 ⊇ c2.
    [[nodiscard]] bool leq(const ClosedTheory& c1, const ClosedTheory& c2) const;

    /// closure(∅): the sentences true in every model.
    [[nodiscard]] const ClosedTheory& top() const { return theories_[lattice_.top()]; }
    /// closure(pool): the largest intent.
    [[nodiscard]] const ClosedTheory& bottom() const { return theories_[lattice_.bottom()]; }

    /// Supremum: intersection of the theories.
    [[nodiscard]] ClosedTheory join(const ClosedTheory& c1, const ClosedTheory& c2) const;
    /// Infimum: closure of the union, cross-checked against the theory of the common models.
    [[nodiscard]] ClosedTheory meet(const ClosedTheory& c1, const ClosedTheory& c2) const;

    [[nodiscard]] ClosedTheory closure(const Theory& t) const { return tc_.closure(t); }

private:
    TruthClassification tc_;
    fca::ConceptLattice lattice_;
    std::vector<ClosedTheory> theories_;
};

}  // namespace lot::truth
