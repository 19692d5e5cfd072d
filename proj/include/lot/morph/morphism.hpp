#pragma once

#include "lot/logic/formula.hpp"
#include "lot/logic/signature.hpp"
#include "lot/logic/structure.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace lot::morph {

using logic::Formula;
using logic::Sentence;
using logic::SignaturePtr;
using logic::Structure;

using NameMap = std::map<std::string, std::string>;

/// A renaming of entity types, relation types and constants that preserves relation
/// profiles and constant sorts.
class LanguageMorphism {
public:
    /// Index-based maps, one entry per source symbol. Throws ValidationError.
    LanguageMorphism(SignaturePtr src, SignaturePtr dst, std::vector<std::size_t> ent, std::vector<std::size_t> rel,
                     std::vector<std::size_t> constant);
    /// Name-based maps; every source name must be mapped. Throws ValidationError.
    static LanguageMorphism from_names(SignaturePtr src, SignaturePtr dst, const NameMap& ent, const NameMap& rel,
                                       const NameMap& constant);
    static LanguageMorphism identity(const SignaturePtr& sig);

    [[nodiscard]] const SignaturePtr& source() const { return src_; }
    [[nodiscard]] const SignaturePtr& target() const { return dst_; }
    [[nodiscard]] std::size_t ent(std::size_t sort) const { return ent_[sort]; }
    [[nodiscard]] std::size_t rel(std::size_t relation) const { return rel_[relation]; }
    [[nodiscard]] std::size_t constant(std::size_t c) const { return const_[c]; }

private:
    SignaturePtr src_, dst_;
    std::vector<std::size_t> ent_, rel_, const_;
};

/// g ∘ f. Throws SignatureMismatch unless f.target() matches g.source().
LanguageMorphism compose(const LanguageMorphism& g, const LanguageMorphism& f);

/// Relation types go to target formulas. The formula for a relation of profile
/// (E1..En) declares exactly n free variables of sorts ent(E1)..ent(En); it may use any
/// subset of them. Entity types and constants are mapped as in a LanguageMorphism.
class Interpretation {
public:
    /// Throws ValidationError on arity or sort violations.
    Interpretation(SignaturePtr src, SignaturePtr dst, std::vector<std::size_t> ent, std::vector<std::size_t> constant,
                   std::vector<Formula> rel_formula);
    /// `rel_formula` maps each source relation name to formula text using x1..xn.
    static Interpretation from_names(SignaturePtr src, SignaturePtr dst, const NameMap& ent, const NameMap& constant,
                                     const std::map<std::string, std::string>& rel_formula);
    /// R ↦ rel(R)(x1..xn).
    static Interpretation lift(const LanguageMorphism& f);
    static Interpretation identity(const SignaturePtr& sig) { return lift(LanguageMorphism::identity(sig)); }

    [[nodiscard]] const SignaturePtr& source() const { return src_; }
    [[nodiscard]] const SignaturePtr& target() const { return dst_; }
    [[nodiscard]] std::size_t ent(std::size_t sort) const { return ent_[sort]; }
    [[nodiscard]] std::size_t constant(std::size_t c) const { return const_[c]; }
    [[nodiscard]] const Formula& rel_formula(std::size_t relation) const { return rel_[relation]; }

private:
    SignaturePtr src_, dst_;
    std::vector<std::size_t> ent_, const_;
    std::vector<Formula> rel_;
};

/// The free variables x1..xn of sorts ent(profile) for a source relation.
std::vector<logic::FreeVar> reserved_variables(const logic::Signature& src, const logic::Signature& dst,
                                               const std::vector<std::size_t>& ent, std::size_t relation);

/// Homomorphic renaming. Throws SignatureMismatch.
Formula translate(const LanguageMorphism& f, const Formula& phi);
Sentence translate(const LanguageMorphism& f, const Sentence& phi);

/// Replaces each atom R(t1..tn) by rel_formula(R)[x1..xn := t1'..tn'] (capture-avoiding),
/// maps quantifier sorts via ent and constants via the constant map.
Formula translate(const Interpretation& h, const Formula& phi);
Sentence translate(const Interpretation& h, const Sentence& phi);

/// The source structure induced by a target structure: carriers of ent(E) for each E,
/// R interpreted as the tuples satisfying rel_formula(R), constants through the map.
Structure reduct(const Interpretation& h, const Structure& m);
Structure reduct(const LanguageMorphism& f, const Structure& m);

}  // namespace lot::morph
