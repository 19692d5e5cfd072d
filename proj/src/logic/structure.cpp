#include "lot/logic/structure.hpp"

#include "lot/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <sstream>

namespace lot::logic {

CarrierAssignment::CarrierAssignment(const Signature& sig,
                                     const std::map<std::string, std::vector<std::string>>& by_name)
    : carriers_(sig.entities().size()) {
    std::vector<bool> seen(carriers_.size(), false);
    for (const auto& [name, elems] : by_name) {
        auto sort = sig.find_entity(name);
        if (!sort) throw ValidationError("carrier for undeclared entity type '" + name + "'");
        carriers_[*sort] = elems;
        seen[*sort] = true;
    }
    for (std::size_t s = 0; s < seen.size(); ++s)
        if (!seen[s]) throw ValidationError("no carrier for entity type '" + sig.entities()[s] + "'");
    check(sig);
}

CarrierAssignment CarrierAssignment::from_sorts(const Signature& sig, std::vector<std::vector<std::string>> by_sort) {
    if (by_sort.size() != sig.entities().size()) throw ValidationError("carrier assignment does not cover the signature");
    CarrierAssignment c;
    c.carriers_ = std::move(by_sort);
    c.check(sig);
    return c;
}

void CarrierAssignment::check(const Signature& sig) const {
    for (std::size_t s = 0; s < carriers_.size(); ++s) {
        const auto& c = carriers_[s];
        if (c.empty()) throw ValidationError("empty carrier for entity type '" + sig.entities()[s] + "'");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (trim(c[i]).empty() || c[i].find_first_of(" \t,(){}=#") != std::string::npos)
                throw ValidationError("invalid element name '" + c[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (c[j] == c[i])
                    throw ValidationError("duplicate element '" + c[i] + "' in carrier of '" + sig.entities()[s] + "'");
        }
    }
}

std::optional<std::size_t> CarrierAssignment::find(std::size_t sort, std::string_view element) const {
    const auto& c = carriers_[sort];
    auto it = std::find(c.begin(), c.end(), element);
    if (it == c.end()) return std::nullopt;
    return static_cast<std::size_t>(it - c.begin());
}

CarrierAssignment parse_carriers(const Signature& sig, std::span<const std::string> specs) {
    std::map<std::string, std::vector<std::string>> by_name;
    for (const auto& spec : specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) throw ValidationError("carrier spec '" + spec + "' is not of the form SORT=a,b");
        std::string sort(trim(std::string_view(spec).substr(0, eq)));
        if (by_name.contains(sort)) throw ValidationError("carrier for '" + sort + "' given twice");
        auto& elems = by_name[sort];
        for (auto part : split(std::string_view(spec).substr(eq + 1), ','))
            elems.emplace_back(trim(part));
        if (elems.size() == 1 && elems[0].empty()) elems.clear();
    }
    return CarrierAssignment(sig, by_name);
}

Structure::Structure(SignaturePtr sig, std::shared_ptr<const CarrierAssignment> carriers,
                     std::vector<boost::dynamic_bitset<>> relations, std::vector<std::size_t> constants)
    : sig_(std::move(sig)), carriers_(std::move(carriers)), relations_(std::move(relations)),
      constants_(std::move(constants)) {
    if (carriers_->sorts() != sig_->entities().size()) throw ValidationError("carriers do not match the signature");
    if (relations_.size() != sig_->relations().size()) throw ValidationError("wrong number of relation extensions");
    if (constants_.size() != sig_->constants().size()) throw ValidationError("wrong number of constant denotations");
    for (std::size_t r = 0; r < relations_.size(); ++r)
        if (relations_[r].size() != tuple_space(r))
            throw ValidationError("extension of '" + sig_->relations()[r].name + "' lies outside the carrier product");
    for (std::size_t c = 0; c < constants_.size(); ++c)
        if (constants_[c] >= carriers_->size(sig_->constants()[c].sort))
            throw ValidationError("denotation of '" + sig_->constants()[c].name + "' lies outside its carrier");
}

std::size_t Structure::tuple_space(std::size_t relation) const {
    std::size_t n = 1;
    for (auto s : sig_->relations()[relation].profile) n *= carriers_->size(s);
    return n;
}

std::size_t Structure::tuple_index(std::size_t relation, std::span<const std::size_t> elements) const {
    const auto& profile = sig_->relations()[relation].profile;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) idx = idx * carriers_->size(profile[i]) + elements[i];
    return idx;
}

bool Structure::holds(std::size_t relation, std::span<const std::size_t> elements) const {
    return relations_[relation].test(tuple_index(relation, elements));
}

bool Structure::operator==(const Structure& o) const {
    return same_signature(sig_, o.sig_) && *carriers_ == *o.carriers_ && relations_ == o.relations_ &&
           constants_ == o.constants_;
}

bool Structure::operator<(const Structure& o) const {
    if (*carriers_ != *o.carriers_) return *carriers_ < *o.carriers_;
    if (relations_ != o.relations_) return relations_ < o.relations_;
    return constants_ < o.constants_;
}

namespace {

class Evaluator {
public:
    Evaluator(const Structure& m, std::span<const std::size_t> free) : m_(m), free_(free) {}

    bool eval(const FormulaNode& n) {
        switch (n.op) {
        case Op::atom: {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < n.args.size(); ++i)
                idx = idx * m_.carriers().size(n.args[i].sort) + value(n.args[i]);
            return m_.extension(n.symbol).test(idx);
        }
        case Op::equal: return value(n.args[0]) == value(n.args[1]);
        case Op::negation: return !eval(*n.left);
        case Op::conjunction: return eval(*n.left) && eval(*n.right);
        case Op::disjunction: return eval(*n.left) || eval(*n.right);
        case Op::implication: return !eval(*n.left) || eval(*n.right);
        case Op::biconditional: return eval(*n.left) == eval(*n.right);
        case Op::forall:
        case Op::exists: {
            bool universal = n.op == Op::forall;
            std::size_t size = m_.carriers().size(n.symbol);
            env_.push_back(0);
            bool result = universal;
            for (std::size_t e = 0; e < size; ++e) {
                env_.back() = e;
                if (eval(*n.left) != universal) {
                    result = !universal;
                    break;
                }
            }
            env_.pop_back();
            return result;
        }
        }
        return false;
    }

private:
    std::size_t value(const Term& t) const {
        switch (t.kind) {
        case Term::Kind::bound: return env_[env_.size() - 1 - t.index];
        case Term::Kind::free: return free_[t.index];
        case Term::Kind::constant: return m_.denotation(t.index);
        }
        return 0;
    }

    const Structure& m_;
    std::span<const std::size_t> free_;
    std::vector<std::size_t> env_;
};

std::uint64_t relation_bits(const Signature& sig, const CarrierAssignment& carriers, std::size_t r) {
    std::uint64_t n = 1;
    for (auto s : sig.relations()[r].profile) n *= carriers.size(s);
    return n;
}

}  // namespace

bool evaluate(const Structure& m, const Formula& f, std::span<const std::size_t> free_assignment) {
    if (!same_signature(m.signature(), f.signature()))
        throw SignatureMismatch("structure and formula are over different signatures");
    if (free_assignment.size() != f.free_vars().size()) throw ValidationError("free assignment has the wrong length");
    for (std::size_t i = 0; i < free_assignment.size(); ++i)
        if (free_assignment[i] >= m.carriers().size(f.free_vars()[i].sort))
            throw ValidationError("free assignment outside the carrier");
    Evaluator ev(m, free_assignment);
    return ev.eval(f.root());
}

bool satisfies(const Structure& m, const Sentence& s) { return evaluate(m, s.formula(), {}); }

std::optional<std::uint64_t> structure_count(const Signature& sig, const CarrierAssignment& carriers) {
    std::uint64_t total_bits = 0;
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        total_bits += relation_bits(sig, carriers, r);
        if (total_bits >= 64) return std::nullopt;
    }
    std::uint64_t count = std::uint64_t{1} << total_bits;
    for (const auto& c : sig.constants()) {
        std::uint64_t k = carriers.size(c.sort);
        if (count > UINT64_MAX / k) return std::nullopt;
        count *= k;
    }
    return count;
}

Structure structure_at(const SignaturePtr& sig, const std::shared_ptr<const CarrierAssignment>& carriers,
                       std::uint64_t k) {
    std::vector<boost::dynamic_bitset<>> rels;
    for (std::size_t r = 0; r < sig->relations().size(); ++r) {
        auto bits = relation_bits(*sig, *carriers, r);
        boost::dynamic_bitset<> ext(bits);
        for (std::uint64_t t = 0; t < bits; ++t, k >>= 1)
            if (k & 1) ext.set(t);
        rels.push_back(std::move(ext));
    }
    std::vector<std::size_t> consts;
    for (const auto& c : sig->constants()) {
        auto size = carriers->size(c.sort);
        consts.push_back(k % size);
        k /= size;
    }
    return Structure(sig, carriers, std::move(rels), std::move(consts));
}

std::vector<Structure> enumerate_structures(const SignaturePtr& sig, const CarrierAssignment& carriers,
                                            std::uint64_t cap) {
    auto count = structure_count(*sig, carriers);
    if (!count)
        throw CapExceeded("structure count exceeds 2^64 (cap " + std::to_string(cap) + ")", UINT64_MAX, true);
    if (*count > cap)
        throw CapExceeded("structure count " + std::to_string(*count) + " exceeds the cap " + std::to_string(cap),
                          *count);
    auto shared = std::make_shared<const CarrierAssignment>(carriers);
    std::vector<Structure> out;
    out.reserve(*count);
    for (std::uint64_t k = 0; k < *count; ++k) out.push_back(structure_at(sig, shared, k));
    return out;
}

std::vector<Sentence> theory_of(const Structure& m, std::span<const Sentence> pool) {
    std::vector<Sentence> out;
    for (const auto& s : pool)
        if (satisfies(m, s)) out.push_back(s);
    return out;
}

namespace {

// Splits "{x, (y,z), ...}" into its top-level items, each with surrounding parentheses removed.
std::vector<std::vector<std::string>> parse_set(std::size_t lineno, std::string_view body) {
    body = trim(body);
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
        throw ParseError(lineno, "expected a set in braces");
    body = trim(body.substr(1, body.size() - 2));
    std::vector<std::vector<std::string>> items;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < body.size() && (body[i] == ' ' || body[i] == '\t')) ++i;
    };
    while (true) {
        skip_ws();
        if (i >= body.size()) break;
        std::vector<std::string> tuple;
        if (body[i] == '(') {
            auto close = body.find(')', i);
            if (close == std::string_view::npos) throw ParseError(lineno, "unterminated tuple");
            for (auto part : split(body.substr(i + 1, close - i - 1), ',')) tuple.emplace_back(trim(part));
            i = close + 1;
        } else {
            auto end = body.find(',', i);
            tuple.emplace_back(trim(body.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i)));
            i = end == std::string_view::npos ? body.size() : end;
        }
        for (const auto& e : tuple)
            if (e.empty()) throw ParseError(lineno, "empty element in set");
        items.push_back(std::move(tuple));
        skip_ws();
        if (i < body.size()) {
            if (body[i] != ',') throw ParseError(lineno, "expected ',' between set items");
            ++i;
        }
    }
    return items;
}

struct PendingModel {
    std::map<std::string, std::vector<std::string>> universes;
    std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> assignments;  // line, (name, rhs)
    std::size_t first_line = 0;
    bool empty() const { return universes.empty() && assignments.empty(); }
};

Structure finish_model(const SignaturePtr& sig, const PendingModel& pm) {
    std::shared_ptr<const CarrierAssignment> carriers;
    try {
        carriers = std::make_shared<const CarrierAssignment>(*sig, pm.universes);
    } catch (const ValidationError& e) {
        throw ParseError(pm.first_line, e.what());
    }
    std::vector<boost::dynamic_bitset<>> rels;
    for (std::size_t r = 0; r < sig->relations().size(); ++r) {
        std::size_t n = 1;
        for (auto s : sig->relations()[r].profile) n *= carriers->size(s);
        rels.emplace_back(n);
    }
    std::vector<std::optional<std::size_t>> consts(sig->constants().size());
    std::vector<bool> rel_seen(rels.size(), false);
    for (const auto& [lineno, assignment] : pm.assignments) {
        const auto& [name, rhs] = assignment;
        if (auto r = sig->find_relation(name)) {
            if (rel_seen[*r]) throw ParseError(lineno, "relation '" + name + "' assigned twice");
            rel_seen[*r] = true;
            const auto& profile = sig->relations()[*r].profile;
            for (const auto& tuple : parse_set(lineno, rhs)) {
                if (tuple.size() != profile.size())
                    throw ParseError(lineno, "tuple of wrong arity for '" + name + "'");
                std::size_t idx = 0;
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    auto e = carriers->find(profile[i], tuple[i]);
                    if (!e)
                        throw ParseError(lineno, "element '" + tuple[i] + "' not in carrier of '" +
                                                     sig->entities()[profile[i]] + "'");
                    idx = idx * carriers->size(profile[i]) + *e;
                }
                rels[*r].set(idx);
            }
        } else if (auto c = sig->find_constant(name)) {
            if (consts[*c]) throw ParseError(lineno, "constant '" + name + "' assigned twice");
            std::string elem(trim(rhs));
            auto e = carriers->find(sig->constants()[*c].sort, elem);
            if (!e) throw ParseError(lineno, "element '" + elem + "' not in carrier of '" +
                                                 sig->entities()[sig->constants()[*c].sort] + "'");
            consts[*c] = *e;
        } else {
            throw ParseError(lineno, "unknown relation or constant '" + name + "'");
        }
    }
    std::vector<std::size_t> denot;
    for (std::size_t c = 0; c < consts.size(); ++c) {
        if (!consts[c]) throw ParseError(pm.first_line, "constant '" + sig->constants()[c].name + "' not assigned");
        denot.push_back(*consts[c]);
    }
    return Structure(sig, std::move(carriers), std::move(rels), std::move(denot));
}

}  // namespace

std::vector<Structure> parse_models(const SignaturePtr& sig, std::string_view text) {
    std::vector<Structure> out;
    PendingModel pm;
    auto flush = [&] {
        if (!pm.empty()) out.push_back(finish_model(sig, pm));
        pm = PendingModel{};
    };
    for (const auto& [lineno, raw] : numbered_lines(text)) {
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line == "---") {
            flush();
            continue;
        }
        if (pm.first_line == 0) pm.first_line = lineno;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(lineno, "expected 'NAME = ...'");
        auto lhs = trim(line.substr(0, eq));
        auto rhs = std::string(trim(line.substr(eq + 1)));
        auto [word, rest] = split_word(lhs);
        if (word == "universe") {
            std::string sort(trim(rest));
            if (!sig->find_entity(sort)) throw ParseError(lineno, "universe for undeclared entity type '" + sort + "'");
            if (pm.universes.contains(sort)) throw ParseError(lineno, "universe for '" + sort + "' given twice");
            auto& elems = pm.universes[sort];
            for (auto& tuple : parse_set(lineno, rhs)) {
                if (tuple.size() != 1) throw ParseError(lineno, "universe elements must be plain names");
                elems.push_back(std::move(tuple[0]));
            }
        } else {
            if (!trim(rest).empty()) throw ParseError(lineno, "expected 'NAME = ...'");
            pm.assignments.push_back({lineno, {std::string(word), rhs}});
        }
    }
    flush();
    return out;
}

std::string print_structure(const Structure& m) {
    const auto& sig = m.sig();
    std::ostringstream out;
    for (std::size_t s = 0; s < sig.entities().size(); ++s) {
        out << "universe " << sig.entities()[s] << " = {";
        const auto& c = m.carriers().of(s);
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ", " : "") << c[i];
        out << "}\n";
    }
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
        const auto& profile = sig.relations()[r].profile;
        out << sig.relations()[r].name << " = {";
        bool first = true;
        const auto& ext = m.extension(r);
        for (auto t = ext.find_first(); t != boost::dynamic_bitset<>::npos; t = ext.find_next(t)) {
            std::vector<std::size_t> digits(profile.size());
            auto rem = t;
            for (std::size_t i = profile.size(); i-- > 0;) {
                digits[i] = rem % m.carriers().size(profile[i]);
                rem /= m.carriers().size(profile[i]);
            }
            out << (first ? "" : ", ") << '(';
            for (std::size_t i = 0; i < digits.size(); ++i)
                out << (i ? "," : "") << m.carriers().of(profile[i])[digits[i]];
            out << ')';
            first = false;
        }
        out << "}\n";
    }
    for (std::size_t c = 0; c < sig.constants().size(); ++c)
        out << sig.constants()[c].name << " = " << m.carriers().of(sig.constants()[c].sort)[m.denotation(c)] << '\n';
    return out.str();
}

}  // namespace lot::logic
