#pragma once

#include "lot/logic/signature.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lot::logic {

/// A term: a bound variable (de Bruijn index, 0 = innermost binder), a declared free
/// variable (index into the formula's free-variable list) or a constant.
struct Term {
    enum class Kind : std::uint8_t { bound, free, constant };

    Kind kind;
    std::size_t index;
    std::size_t sort;

    static Term bound(std::size_t de_bruijn, std::size_t sort) { return {Kind::bound, de_bruijn, sort}; }
    static Term free(std::size_t slot, std::size_t sort) { return {Kind::free, slot, sort}; }
    static Term constant(const Signature& sig, std::size_t c) { return {Kind::constant, c, sig.constants()[c].sort}; }

    bool operator==(const Term&) const = default;
};

struct FreeVar {
    std::string name;
    std::size_t sort;

    bool operator==(const FreeVar&) const = default;
};

enum class Op : std::uint8_t { atom, equal, negation, conjunction, disjunction, implication, biconditional, forall, exists };

struct FormulaNode;
using NodeRef = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    Op op;
    std::size_t symbol = 0;  // relation (atom) or bound sort (quantifier)
    std::vector<Term> args;  // atom arguments; the two sides of an equality
    NodeRef left;            // operand of ~, body of a quantifier, lhs of a binary connective
    NodeRef right;
    std::string hint;        // binder name as written; not part of identity
};

NodeRef make_atom(std::size_t relation, std::vector<Term> args);
NodeRef make_equal(Term lhs, Term rhs);
NodeRef make_not(NodeRef operand);
NodeRef make_binary(Op op, NodeRef lhs, NodeRef rhs);
NodeRef make_quantifier(Op op, std::size_t sort, NodeRef body, std::string hint = "x");

/// Structural equality up to bound-variable names.
bool alpha_equal(const FormulaNode& a, const FormulaNode& b);

/// A well-typed formula over a signature with an explicit free-variable context.
/// Immutable; copies share structure.
class Formula {
public:
    /// Validates typing and variable scoping; throws ValidationError.
    Formula(SignaturePtr sig, std::vector<FreeVar> free_vars, NodeRef root);

    [[nodiscard]] const SignaturePtr& signature() const { return sig_; }
    [[nodiscard]] const Signature& sig() const { return *sig_; }
    [[nodiscard]] const std::vector<FreeVar>& free_vars() const { return free_; }
    [[nodiscard]] const FormulaNode& root() const { return *root_; }
    [[nodiscard]] const NodeRef& root_ptr() const { return root_; }

    /// Free-variable slots that actually occur.
    [[nodiscard]] std::vector<bool> occurring_free() const;

private:
    SignaturePtr sig_;
    std::vector<FreeVar> free_;
    NodeRef root_;
};

/// A closed formula. Equality is α-equivalence, realised by comparing canonical keys.
class Sentence {
public:
    /// Throws ValidationError if the formula has a free-variable occurrence.
    explicit Sentence(const Formula& f);

    [[nodiscard]] const Formula& formula() const { return formula_; }
    [[nodiscard]] const SignaturePtr& signature() const { return formula_.signature(); }
    [[nodiscard]] const FormulaNode& root() const { return formula_.root(); }
    /// α-canonical printed form.
    [[nodiscard]] const std::string& key() const { return key_; }

    bool operator==(const Sentence& o) const { return key_ == o.key_ && same_signature(signature(), o.signature()); }
    auto operator<=>(const Sentence& o) const { return key_ <=> o.key_; }

private:
    Formula formula_;
    std::string key_;
};

/// Concrete syntax: `forall x:E. φ`, `exists x:E. φ`, `~ & | -> <->` (tightest first;
/// `->` right-associative, the others left-associative), `R(t,...)`, `t = t`, parentheses.
/// Quantifier bodies extend as far right as possible. Identifiers resolve to the innermost
/// binder, then to `free_vars`, then to constants. Throws ParseError.
Formula parse_formula(const SignaturePtr& sig, std::string_view text, std::vector<FreeVar> free_vars = {});
Sentence parse_sentence(const SignaturePtr& sig, std::string_view text);

/// Canonical printer: bound variables are named by binder depth and only necessary
/// parentheses are emitted, so α-equivalent formulas print identically and the output
/// parses back to the same tree.
std::string print(const Formula& f);
inline std::string print(const Sentence& s) { return s.key(); }

/// Parses a pool/theory file: one sentence per line, `#` comments, blank lines ignored.
/// Throws ParseError carrying the file line.
std::vector<Sentence> parse_sentence_list(const SignaturePtr& sig, std::string_view text);

}  // namespace lot::logic
