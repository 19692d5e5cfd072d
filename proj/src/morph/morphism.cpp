#include "lot/morph/morphism.hpp"

#include "lot/error.hpp"

#include <functional>
#include <optional>

namespace lot::morph {

using logic::FormulaNode;
using logic::NodeRef;
using logic::Op;
using logic::Term;

namespace {

std::vector<std::size_t> resolve(const NameMap& map, const std::vector<std::string>& src_names, const char* kind,
                                 const std::function<std::optional<std::size_t>(const std::string&)>& find_dst) {
    for (const auto& [from, to] : map) {
        bool known = false;
        for (const auto& n : src_names) known = known || n == from;
        if (!known) throw ValidationError(std::string("mapping for unknown source ") + kind + " '" + from + "'");
    }
    std::vector<std::size_t> out;
    for (const auto& name : src_names) {
        auto it = map.find(name);
        if (it == map.end()) throw ValidationError(std::string("missing mapping for ") + kind + " '" + name + "'");
        auto idx = find_dst(it->second);
        if (!idx)
            throw ValidationError(std::string(kind) + " '" + name + "' maps to unknown target '" + it->second + "'");
        out.push_back(*idx);
    }
    return out;
}

std::vector<std::string> relation_names(const logic::Signature& s) {
    std::vector<std::string> out;
    for (const auto& r : s.relations()) out.push_back(r.name);
    return out;
}

std::vector<std::string> constant_names(const logic::Signature& s) {
    std::vector<std::string> out;
    for (const auto& c : s.constants()) out.push_back(c.name);
    return out;
}

void check_ent_and_constants(const logic::Signature& src, const logic::Signature& dst,
                             const std::vector<std::size_t>& ent, const std::vector<std::size_t>& constant) {
    if (ent.size() != src.entities().size()) throw ValidationError("entity map is not total");
    for (auto e : ent)
        if (e >= dst.entities().size()) throw ValidationError("entity map leaves the target signature");
    if (constant.size() != src.constants().size()) throw ValidationError("constant map is not total");
    for (std::size_t c = 0; c < constant.size(); ++c) {
        if (constant[c] >= dst.constants().size()) throw ValidationError("constant map leaves the target signature");
        const auto& from = src.constants()[c];
        const auto& to = dst.constants()[constant[c]];
        if (to.sort != ent[from.sort])
            throw ValidationError("constant '" + from.name + "' maps to '" + to.name + "' of sort " +
                                  dst.entities()[to.sort] + ", expected " + dst.entities()[ent[from.sort]]);
    }
}

Term shift(Term t, std::size_t by) {
    if (t.kind == Term::Kind::bound) t.index += by;
    return t;
}

// Substitutes the free slots of an interpreting formula. `binders` counts the binders of
// the interpreting formula enclosing the current node.
NodeRef substitute(const FormulaNode& n, const std::vector<Term>& actual, std::size_t binders) {
    auto term = [&](const Term& t) { return t.kind == Term::Kind::free ? shift(actual[t.index], binders) : t; };
    switch (n.op) {
    case Op::atom: {
        std::vector<Term> args;
        for (const auto& t : n.args) args.push_back(term(t));
        return logic::make_atom(n.symbol, std::move(args));
    }
    case Op::equal: return logic::make_equal(term(n.args[0]), term(n.args[1]));
    case Op::negation: return logic::make_not(substitute(*n.left, actual, binders));
    case Op::forall:
    case Op::exists: return logic::make_quantifier(n.op, n.symbol, substitute(*n.left, actual, binders + 1), n.hint);
    default:
        return logic::make_binary(n.op, substitute(*n.left, actual, binders), substitute(*n.right, actual, binders));
    }
}

template <class SortMap, class ConstMap, class AtomFn>
NodeRef transport(const FormulaNode& n, const SortMap& sort, const ConstMap& constant, const AtomFn& atom) {
    auto term = [&](const Term& t) {
        Term out = t;
        out.sort = sort(t.sort);
        if (t.kind == Term::Kind::constant) out.index = constant(t.index);
        return out;
    };
    switch (n.op) {
    case Op::atom: {
        std::vector<Term> args;
        for (const auto& t : n.args) args.push_back(term(t));
        return atom(n.symbol, std::move(args));
    }
    case Op::equal: return logic::make_equal(term(n.args[0]), term(n.args[1]));
    case Op::negation: return logic::make_not(transport(*n.left, sort, constant, atom));
    case Op::forall:
    case Op::exists:
        return logic::make_quantifier(n.op, sort(n.symbol), transport(*n.left, sort, constant, atom), n.hint);
    default:
        return logic::make_binary(n.op, transport(*n.left, sort, constant, atom),
                                  transport(*n.right, sort, constant, atom));
    }
}

std::vector<logic::FreeVar> map_free(const std::vector<logic::FreeVar>& free, const std::vector<std::size_t>& ent) {
    std::vector<logic::FreeVar> out;
    for (const auto& v : free) out.push_back({v.name, ent[v.sort]});
    return out;
}

void require_source(const SignaturePtr& expected, const SignaturePtr& actual) {
    if (!logic::same_signature(expected, actual))
        throw SignatureMismatch("formula is not over the source signature of the morphism");
}

}  // namespace

LanguageMorphism::LanguageMorphism(SignaturePtr src, SignaturePtr dst, std::vector<std::size_t> ent,
                                   std::vector<std::size_t> rel, std::vector<std::size_t> constant)
    : src_(std::move(src)), dst_(std::move(dst)), ent_(std::move(ent)), rel_(std::move(rel)),
      const_(std::move(constant)) {
    check_ent_and_constants(*src_, *dst_, ent_, const_);
    if (rel_.size() != src_->relations().size()) throw ValidationError("relation map is not total");
    for (std::size_t r = 0; r < rel_.size(); ++r) {
        if (rel_[r] >= dst_->relations().size()) throw ValidationError("relation map leaves the target signature");
        const auto& from = src_->relations()[r];
        const auto& to = dst_->relations()[rel_[r]];
        if (from.profile.size() != to.profile.size())
            throw ValidationError("arity mismatch: relation '" + from.name + "' has arity " +
                                  std::to_string(from.profile.size()) + " but '" + to.name + "' has arity " +
                                  std::to_string(to.profile.size()));
        for (std::size_t i = 0; i < from.profile.size(); ++i)
            if (ent_[from.profile[i]] != to.profile[i])
                throw ValidationError("profile mismatch: relation '" + from.name + "' position " +
                                      std::to_string(i + 1) + " maps sort " + dst_->entities()[ent_[from.profile[i]]] +
                                      " but '" + to.name + "' expects " + dst_->entities()[to.profile[i]]);
    }
}

LanguageMorphism LanguageMorphism::from_names(SignaturePtr src, SignaturePtr dst, const NameMap& ent,
                                              const NameMap& rel, const NameMap& constant) {
    const auto& d = *dst;
    auto e = resolve(ent, src->entities(), "entity type", [&](const std::string& n) { return d.find_entity(n); });
    auto r = resolve(rel, relation_names(*src), "relation", [&](const std::string& n) { return d.find_relation(n); });
    auto c = resolve(constant, constant_names(*src), "constant",
                     [&](const std::string& n) { return d.find_constant(n); });
    return LanguageMorphism(std::move(src), std::move(dst), std::move(e), std::move(r), std::move(c));
}

LanguageMorphism LanguageMorphism::identity(const SignaturePtr& sig) {
    std::vector<std::size_t> e(sig->entities().size()), r(sig->relations().size()), c(sig->constants().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = i;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = i;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = i;
    return LanguageMorphism(sig, sig, e, r, c);
}

LanguageMorphism compose(const LanguageMorphism& g, const LanguageMorphism& f) {
    if (!logic::same_signature(f.target(), g.source()))
        throw SignatureMismatch("morphisms are not composable");
    std::vector<std::size_t> e, r, c;
    for (std::size_t i = 0; i < f.source()->entities().size(); ++i) e.push_back(g.ent(f.ent(i)));
    for (std::size_t i = 0; i < f.source()->relations().size(); ++i) r.push_back(g.rel(f.rel(i)));
    for (std::size_t i = 0; i < f.source()->constants().size(); ++i) c.push_back(g.constant(f.constant(i)));
    return LanguageMorphism(f.source(), g.target(), e, r, c);
}

std::vector<logic::FreeVar> reserved_variables(const logic::Signature& src, const logic::Signature&,
                                               const std::vector<std::size_t>& ent, std::size_t relation) {
    std::vector<logic::FreeVar> vars;
    const auto& profile = src.relations()[relation].profile;
    for (std::size_t i = 0; i < profile.size(); ++i) vars.push_back({"x" + std::to_string(i + 1), ent[profile[i]]});
    return vars;
}

Interpretation::Interpretation(SignaturePtr src, SignaturePtr dst, std::vector<std::size_t> ent,
                               std::vector<std::size_t> constant, std::vector<Formula> rel_formula)
    : src_(std::move(src)), dst_(std::move(dst)), ent_(std::move(ent)), const_(std::move(constant)),
      rel_(std::move(rel_formula)) {
    check_ent_and_constants(*src_, *dst_, ent_, const_);
    if (rel_.size() != src_->relations().size()) throw ValidationError("relation interpretation is not total");
    for (std::size_t r = 0; r < rel_.size(); ++r) {
        const auto& rel = src_->relations()[r];
        const auto& f = rel_[r];
        if (!logic::same_signature(f.signature(), dst_))
            throw ValidationError("formula for '" + rel.name + "' is not over the target signature");
        if (f.free_vars().size() != rel.profile.size())
            throw ValidationError("formula for '" + rel.name + "' declares " + std::to_string(f.free_vars().size()) +
                                  " free variables, expected " + std::to_string(rel.profile.size()));
        for (std::size_t i = 0; i < rel.profile.size(); ++i)
            if (f.free_vars()[i].sort != ent_[rel.profile[i]])
                throw ValidationError("formula for '" + rel.name + "': free variable " + f.free_vars()[i].name +
                                      " has sort " + dst_->entities()[f.free_vars()[i].sort] + ", expected " +
                                      dst_->entities()[ent_[rel.profile[i]]]);
    }
}

Interpretation Interpretation::from_names(SignaturePtr src, SignaturePtr dst, const NameMap& ent,
                                          const NameMap& constant,
                                          const std::map<std::string, std::string>& rel_formula) {
    const auto& d = *dst;
    auto e = resolve(ent, src->entities(), "entity type", [&](const std::string& n) { return d.find_entity(n); });
    auto c = resolve(constant, constant_names(*src), "constant",
                     [&](const std::string& n) { return d.find_constant(n); });
    for (const auto& [name, text] : rel_formula)
        if (!src->find_relation(name)) throw ValidationError("interpretation for unknown relation '" + name + "'");
    std::vector<Formula> formulas;
    for (std::size_t r = 0; r < src->relations().size(); ++r) {
        const auto& name = src->relations()[r].name;
        auto it = rel_formula.find(name);
        if (it == rel_formula.end()) throw ValidationError("missing interpretation for relation '" + name + "'");
        try {
            formulas.push_back(logic::parse_formula(dst, it->second, reserved_variables(*src, *dst, e, r)));
        } catch (const ParseError& err) {
            throw ValidationError("formula for '" + name + "': " + err.detail());
        }
    }
    return Interpretation(std::move(src), std::move(dst), std::move(e), std::move(c), std::move(formulas));
}

Interpretation Interpretation::lift(const LanguageMorphism& f) {
    const auto& src = *f.source();
    std::vector<std::size_t> ent, constant;
    for (std::size_t i = 0; i < src.entities().size(); ++i) ent.push_back(f.ent(i));
    for (std::size_t i = 0; i < src.constants().size(); ++i) constant.push_back(f.constant(i));
    std::vector<Formula> formulas;
    for (std::size_t r = 0; r < src.relations().size(); ++r) {
        auto vars = reserved_variables(src, *f.target(), ent, r);
        std::vector<Term> args;
        for (std::size_t i = 0; i < vars.size(); ++i) args.push_back(Term::free(i, vars[i].sort));
        formulas.emplace_back(f.target(), vars, logic::make_atom(f.rel(r), std::move(args)));
    }
    return Interpretation(f.source(), f.target(), std::move(ent), std::move(constant), std::move(formulas));
}

Formula translate(const LanguageMorphism& f, const Formula& phi) {
    require_source(f.source(), phi.signature());
    std::vector<std::size_t> ent;
    for (std::size_t i = 0; i < f.source()->entities().size(); ++i) ent.push_back(f.ent(i));
    auto root = transport(
        phi.root(), [&](std::size_t s) { return f.ent(s); }, [&](std::size_t c) { return f.constant(c); },
        [&](std::size_t r, std::vector<Term> args) { return logic::make_atom(f.rel(r), std::move(args)); });
    return Formula(f.target(), map_free(phi.free_vars(), ent), std::move(root));
}

Sentence translate(const LanguageMorphism& f, const Sentence& phi) { return Sentence(translate(f, phi.formula())); }

Formula translate(const Interpretation& h, const Formula& phi) {
    require_source(h.source(), phi.signature());
    std::vector<std::size_t> ent;
    for (std::size_t i = 0; i < h.source()->entities().size(); ++i) ent.push_back(h.ent(i));
    auto root = transport(
        phi.root(), [&](std::size_t s) { return h.ent(s); }, [&](std::size_t c) { return h.constant(c); },
        [&](std::size_t r, std::vector<Term> args) { return substitute(h.rel_formula(r).root(), args, 0); });
    return Formula(h.target(), map_free(phi.free_vars(), ent), std::move(root));
}

Sentence translate(const Interpretation& h, const Sentence& phi) { return Sentence(translate(h, phi.formula())); }

Structure reduct(const Interpretation& h, const Structure& m) {
    if (!logic::same_signature(m.signature(), h.target()))
        throw SignatureMismatch("structure is not over the target signature of the interpretation");
    const auto& src = *h.source();
    std::vector<std::vector<std::string>> carriers;
    for (std::size_t e = 0; e < src.entities().size(); ++e) carriers.push_back(m.carriers().of(h.ent(e)));
    auto shared = std::make_shared<const logic::CarrierAssignment>(logic::CarrierAssignment::from_sorts(src, std::move(carriers)));

    std::vector<boost::dynamic_bitset<>> rels;
    for (std::size_t r = 0; r < src.relations().size(); ++r) {
        const auto& profile = src.relations()[r].profile;
        std::size_t space = 1;
        for (auto s : profile) space *= shared->size(s);
        boost::dynamic_bitset<> ext(space);
        std::vector<std::size_t> tuple(profile.size());
        for (std::size_t t = 0; t < space; ++t) {
            auto rem = t;
            for (std::size_t i = profile.size(); i-- > 0;) {
                tuple[i] = rem % shared->size(profile[i]);
                rem /= shared->size(profile[i]);
            }
            if (logic::evaluate(m, h.rel_formula(r), tuple)) ext.set(t);
        }
        rels.push_back(std::move(ext));
    }
    std::vector<std::size_t> consts;
    for (std::size_t c = 0; c < src.constants().size(); ++c) consts.push_back(m.denotation(h.constant(c)));
    return Structure(h.source(), std::move(shared), std::move(rels), std::move(consts));
}

Structure reduct(const LanguageMorphism& f, const Structure& m) { return reduct(Interpretation::lift(f), m); }

}  // namespace lot::morph
