#include "lot/morph/io.hpp"

#include "lot/error.hpp"
#include "text_util.hpp"

#include <sstream>

namespace lot::morph {

namespace {

struct Arrow {
    std::size_t line;
    std::string keyword;
    std::string lhs;
    std::string rhs;
};

std::vector<Arrow> read_arrows(std::string_view text) {
    std::vector<Arrow> out;
    for (const auto& [lineno, raw] : numbered_lines(text)) {
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        auto [keyword, rest] = split_word(line);
        if (keyword != "entity" && keyword != "relation" && keyword != "constant")
            throw ParseError(lineno, "expected 'entity', 'relation' or 'constant'");
        // For relation heads the arrow follows the closing parenthesis.
        std::size_t from = 0;
        if (keyword == "relation") {
            auto close = rest.find(')');
            if (close != std::string_view::npos) from = close;
        }
        auto arrow = rest.find("->", from);
        if (arrow == std::string_view::npos) throw ParseError(lineno, "expected 'NAME -> TARGET'");
        Arrow a{lineno, std::string(keyword), std::string(trim(rest.substr(0, arrow))),
                std::string(trim(rest.substr(arrow + 2)))};
        if (a.lhs.empty() || a.rhs.empty()) throw ParseError(lineno, "expected 'NAME -> TARGET'");
        out.push_back(std::move(a));
    }
    return out;
}

void put(NameMap& map, const Arrow& a, const std::string& key, const std::string& value) {
    if (!map.emplace(key, value).second) throw ParseError(a.line, a.keyword + " '" + key + "' mapped twice");
}

}  // namespace

LanguageMorphism parse_morphism(const SignaturePtr& src, const SignaturePtr& dst, std::string_view text) {
    auto arrows = read_arrows(text);
    NameMap ent, rel, constant;
    for (const auto& a : arrows) {
        if (!logic::is_identifier(a.lhs) || !logic::is_identifier(a.rhs))
            throw ParseError(a.line, "expected '" + a.keyword + " NAME -> NAME'");
        put(a.keyword == "entity" ? ent : a.keyword == "relation" ? rel : constant, a, a.lhs, a.rhs);
    }
    try {
        return LanguageMorphism::from_names(src, dst, ent, rel, constant);
    } catch (const ValidationError& e) {
        throw ParseError(0, e.what());
    }
}

Interpretation parse_interpretation(const SignaturePtr& src, const SignaturePtr& dst, std::string_view text) {
    auto arrows = read_arrows(text);
    NameMap ent, constant;
    std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> heads;  // relation -> (arrow, vars)
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        const auto& a = arrows[k];
        if (a.keyword != "relation") {
            if (!logic::is_identifier(a.lhs) || !logic::is_identifier(a.rhs))
                throw ParseError(a.line, "expected '" + a.keyword + " NAME -> NAME'");
            put(a.keyword == "entity" ? ent : constant, a, a.lhs, a.rhs);
            continue;
        }
        auto open = a.lhs.find('(');
        if (open == std::string::npos || a.lhs.back() != ')')
            throw ParseError(a.line, "expected 'relation R(x1,...,xn) -> FORMULA'");
        std::string name(trim(std::string_view(a.lhs).substr(0, open)));
        std::vector<std::string> vars;
        for (auto v : split(std::string_view(a.lhs).substr(open + 1, a.lhs.size() - open - 2), ',')) {
            std::string var(trim(v));
            if (!logic::is_identifier(var)) throw ParseError(a.line, "invalid variable '" + var + "' in relation head");
            for (const auto& seen : vars)
                if (seen == var) throw ParseError(a.line, "variable '" + var + "' repeated in relation head");
            vars.push_back(var);
        }
        if (!heads.emplace(name, std::make_pair(k, vars)).second)
            throw ParseError(a.line, "relation '" + name + "' interpreted twice");
    }

    std::vector<std::size_t> ent_idx, const_idx;
    try {
        for (const auto& e : src->entities()) {
            auto it = ent.find(e);
            if (it == ent.end()) throw ValidationError("missing mapping for entity type '" + e + "'");
            ent_idx.push_back(dst->entity(it->second));
        }
        for (const auto& [from, _] : ent)
            if (!src->find_entity(from)) throw ValidationError("mapping for unknown source entity type '" + from + "'");
        for (const auto& c : src->constants()) {
            auto it = constant.find(c.name);
            if (it == constant.end()) throw ValidationError("missing mapping for constant '" + c.name + "'");
            const_idx.push_back(dst->constant(it->second));
        }
        for (const auto& [from, _] : constant)
            if (!src->find_constant(from)) throw ValidationError("mapping for unknown source constant '" + from + "'");
    } catch (const ValidationError& e) {
        throw ParseError(0, e.what());
    }

    for (const auto& [name, head] : heads)
        if (!src->find_relation(name))
            throw ParseError(arrows[head.first].line, "interpretation for unknown relation '" + name + "'");

    std::vector<Formula> formulas;
    for (std::size_t r = 0; r < src->relations().size(); ++r) {
        const auto& rel = src->relations()[r];
        auto it = heads.find(rel.name);
        if (it == heads.end()) throw ParseError(0, "missing interpretation for relation '" + rel.name + "'");
        const auto& arrow = arrows[it->second.first];
        const auto& vars = it->second.second;
        if (vars.size() != rel.profile.size())
            throw ParseError(arrow.line, "relation '" + rel.name + "' has arity " + std::to_string(rel.profile.size()) +
                                             ", head lists " + std::to_string(vars.size()) + " variables");
        std::vector<logic::FreeVar> free;
        for (std::size_t i = 0; i < vars.size(); ++i) free.push_back({vars[i], ent_idx[rel.profile[i]]});
        try {
            formulas.push_back(logic::parse_formula(dst, arrow.rhs, std::move(free)));
        } catch (const ParseError& e) {
            throw ParseError(arrow.line, e.detail());
        } catch (const ValidationError& e) {
            throw ParseError(arrow.line, e.what());
        }
    }
    try {
        return Interpretation(src, dst, std::move(ent_idx), std::move(const_idx), std::move(formulas));
    } catch (const ValidationError& e) {
        throw ParseError(0, e.what());
    }
}

std::string print_morphism(const LanguageMorphism& f) {
    const auto& s = *f.source();
    const auto& t = *f.target();
    std::ostringstream out;
    for (std::size_t i = 0; i < s.entities().size(); ++i)
        out << "entity " << s.entities()[i] << " -> " << t.entities()[f.ent(i)] << '\n';
    for (std::size_t i = 0; i < s.relations().size(); ++i)
        out << "relation " << s.relations()[i].name << " -> " << t.relations()[f.rel(i)].name << '\n';
    for (std::size_t i = 0; i < s.constants().size(); ++i)
        out << "constant " << s.constants()[i].name << " -> " << t.constants()[f.constant(i)].name << '\n';
    return out.str();
}

std::string print_interpretation(const Interpretation& h) {
    const auto& s = *h.source();
    const auto& t = *h.target();
    std::ostringstream out;
    for (std::size_t i = 0; i < s.entities().size(); ++i)
        out << "entity " << s.entities()[i] << " -> " << t.entities()[h.ent(i)] << '\n';
    for (std::size_t i = 0; i < s.constants().size(); ++i)
        out << "constant " << s.constants()[i].name << " -> " << t.constants()[h.constant(i)].name << '\n';
    for (std::size_t r = 0; r < s.relations().size(); ++r) {
        const auto& f = h.rel_formula(r);
        out << "relation " << s.relations()[r].name << '(';
        for (std::size_t i = 0; i < f.free_vars().size(); ++i) out << (i ? "," : "") << f.free_vars()[i].name;
        out << ") -> " << logic::print(f) << '\n';
    }
    return out.str();
}

}  // namespace lot::morph
