#include "lot/logic/signature.hpp"

#include "lot/error.hpp"
#include "text_util.hpp"

#include <cctype>
#include <sstream>

namespace lot::logic {

namespace {

template <class Map>
std::optional<std::size_t> lookup(const Map& map, std::string_view name) {
    auto it = map.find(std::string(name));
    if (it == map.end()) return std::nullopt;
    return it->second;
}

void check_identifier(const std::string& name, const char* kind) {
    if (!is_identifier(name)) throw ValidationError(std::string("invalid ") + kind + " name '" + name + "'");
}

}  // namespace

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
    return !is_keyword(s);
}

std::size_t Signature::add_entity(std::string name) {
    check_identifier(name, "entity type");
    if (entity_index_.contains(name)) throw ValidationError("duplicate entity type '" + name + "'");
    entity_index_.emplace(name, entities_.size());
    entities_.push_back(std::move(name));
    return entities_.size() - 1;
}

std::size_t Signature::add_relation(std::string name, const std::vector<std::string>& profile) {
    check_identifier(name, "relation type");
    if (relation_index_.contains(name)) throw ValidationError("duplicate relation type '" + name + "'");
    if (profile.empty()) throw ValidationError("relation '" + name + "' has an empty profile");
    RelationType rel{name, {}};
    for (const auto& sort : profile) {
        auto idx = find_entity(sort);
        if (!idx) throw ValidationError("relation '" + name + "' references undeclared entity type '" + sort + "'");
        rel.profile.push_back(*idx);
    }
    relation_index_.emplace(name, relations_.size());
    relations_.push_back(std::move(rel));
    return relations_.size() - 1;
}

std::size_t Signature::add_constant(std::string name, std::string_view sort) {
    check_identifier(name, "constant");
    if (constant_index_.contains(name)) throw ValidationError("duplicate constant '" + name + "'");
    auto idx = find_entity(sort);
    if (!idx)
        throw ValidationError("constant '" + name + "' references undeclared entity type '" + std::string(sort) + "'");
    constant_index_.emplace(name, constants_.size());
    constants_.push_back({std::move(name), *idx});
    return constants_.size() - 1;
}

std::optional<std::size_t> Signature::find_entity(std::string_view name) const { return lookup(entity_index_, name); }
std::optional<std::size_t> Signature::find_relation(std::string_view name) const {
    return lookup(relation_index_, name);
}
std::optional<std::size_t> Signature::find_constant(std::string_view name) const {
    return lookup(constant_index_, name);
}

std::size_t Signature::entity(std::string_view name) const {
    if (auto i = find_entity(name)) return *i;
    throw ValidationError("unknown entity type '" + std::string(name) + "'");
}
std::size_t Signature::relation(std::string_view name) const {
    if (auto i = find_relation(name)) return *i;
    throw ValidationError("unknown relation type '" + std::string(name) + "'");
}
std::size_t Signature::constant(std::string_view name) const {
    if (auto i = find_constant(name)) return *i;
    throw ValidationError("unknown constant '" + std::string(name) + "'");
}

SignaturePtr parse_signature(std::string_view text) {
    auto sig = std::make_shared<Signature>();
    for (const auto& [lineno, raw] : numbered_lines(text)) {
        std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        try {
            auto [keyword, rest] = split_word(line);
            if (keyword == "entity") {
                std::string name(trim(rest));
                if (!is_identifier(name)) throw ParseError(lineno, "expected 'entity NAME'");
                sig->add_entity(name);
            } else if (keyword == "relation") {
                auto open = rest.find('(');
                auto close = rest.rfind(')');
                if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
                    !trim(rest.substr(close + 1)).empty())
                    throw ParseError(lineno, "expected 'relation NAME(SORT,...)'");
                std::string name(trim(rest.substr(0, open)));
                if (!is_identifier(name)) throw ParseError(lineno, "invalid relation name '" + name + "'");
                std::vector<std::string> profile;
                for (auto part : split(rest.substr(open + 1, close - open - 1), ',')) {
                    std::string sort(trim(part));
                    if (!is_identifier(sort)) throw ParseError(lineno, "invalid sort '" + sort + "' in profile");
                    profile.push_back(std::move(sort));
                }
                sig->add_relation(name, profile);
            } else if (keyword == "constant") {
                auto colon = rest.find(':');
                if (colon == std::string_view::npos) throw ParseError(lineno, "expected 'constant NAME : SORT'");
                std::string name(trim(rest.substr(0, colon)));
                std::string sort(trim(rest.substr(colon + 1)));
                if (!is_identifier(name) || !is_identifier(sort))
                    throw ParseError(lineno, "expected 'constant NAME : SORT'");
                sig->add_constant(name, sort);
            } else {
                throw ParseError(lineno, "unknown declaration '" + std::string(keyword) + "'");
            }
        } catch (const ValidationError& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return sig;
}

std::string print_signature(const Signature& sig) {
    std::ostringstream out;
    for (const auto& e : sig.entities()) out << "entity " << e << '\n';
    for (const auto& r : sig.relations()) {
        out << "relation " << r.name << '(';
        for (std::size_t i = 0; i < r.profile.size(); ++i) out << (i ? "," : "") << sig.entities()[r.profile[i]];
        out << ")\n";
    }
    for (const auto& c : sig.constants()) out << "constant " << c.name << " : " << sig.entities()[c.sort] << '\n';
    return out.str();
}

}  // namespace lot::logic
