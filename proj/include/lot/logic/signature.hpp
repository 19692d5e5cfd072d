#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lot::logic {

struct RelationType {
    std::string name;
    std::vector<std::size_t> profile;  // entity-type indices; arity = profile.size()

    bool operator==(const RelationType&) const = default;
};

struct ConstantSymbol {
    std::string name;
    std::size_t sort;

    bool operator==(const ConstantSymbol&) const = default;
};

/// A first-order type language: entity types (sorts), relation types with sort
/// profiles, and sorted constants. Declaration order is preserved and is the
/// order used for structure enumeration.
class Signature {
public:
    Signature() = default;

    /// Each add_* validates uniqueness and sort references; throws ValidationError.
    std::size_t add_entity(std::string name);
    std::size_t add_relation(std::string name, const std::vector<std::string>& profile);
    std::size_t add_constant(std::string name, std::string_view sort);

    [[nodiscard]] const std::vector<std::string>& entities() const { return entities_; }
    [[nodiscard]] const std::vector<RelationType>& relations() const { return relations_; }
    [[nodiscard]] const std::vector<ConstantSymbol>& constants() const { return constants_; }

    [[nodiscard]] std::optional<std::size_t> find_entity(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_relation(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_constant(std::string_view name) const;

    /// Like find_*, but throw ValidationError naming the missing symbol.
    [[nodiscard]] std::size_t entity(std::string_view name) const;
    [[nodiscard]] std::size_t relation(std::string_view name) const;
    [[nodiscard]] std::size_t constant(std::string_view name) const;

    bool operator==(const Signature& other) const {
        return entities_ == other.entities_ && relations_ == other.relations_ && constants_ == other.constants_;
    }

private:
    std::vector<std::string> entities_;
    std::vector<RelationType> relations_;
    std::vector<ConstantSymbol> constants_;
    std::unordered_map<std::string, std::size_t> entity_index_;
    std::unordered_map<std::string, std::size_t> relation_index_;
    std::unordered_map<std::string, std::size_t> constant_index_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// Pointer-or-value equality.
inline bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Parses the signature file format: `entity NAME`, `relation NAME(SORT,...)`,
/// `constant NAME : SORT`, one per line, `#` comments. Throws ParseError with the
/// offending line number.
SignaturePtr parse_signature(std::string_view text);

/// Inverse of parse_signature (canonical layout).
std::string print_signature(const Signature& sig);

bool is_identifier(std::string_view s);

}  // namespace lot::logic
