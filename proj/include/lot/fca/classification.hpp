#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lot::fca {

using Bits = boost::dynamic_bitset<>;

/// Indices of the set bits, ascending.
std::vector<std::size_t> members(const Bits& b);

/// A finite classification (formal context): instances, types and the incidence relation
/// between them. Ids are opaque names kept in declaration order; the bit-set API below
/// works on positions.
class Classification {
public:
    Classification() = default;
    /// Throws ValidationError on duplicate ids or incidence pairs naming undeclared ids.
    Classification(std::vector<std::string> instances, std::vector<std::string> types,
                   const std::vector<std::pair<std::string, std::string>>& incidence);
    /// `rows[i]` holds the types of instance i.
    static Classification from_rows(std::vector<std::string> instances, std::vector<std::string> types,
                                    std::vector<Bits> rows);

    [[nodiscard]] const std::vector<std::string>& instances() const { return instances_; }
    [[nodiscard]] const std::vector<std::string>& types() const { return types_; }
    [[nodiscard]] std::size_t instance_count() const { return instances_.size(); }
    [[nodiscard]] std::size_t type_count() const { return types_.size(); }
    [[nodiscard]] const Bits& row(std::size_t instance) const { return rows_[instance]; }
    [[nodiscard]] const Bits& column(std::size_t type) const { return columns_[type]; }
    [[nodiscard]] bool incident(std::size_t instance, std::size_t type) const { return rows_[instance].test(type); }
    [[nodiscard]] std::size_t incidence_count() const;

    /// Throw ForeignElement for unknown ids.
    [[nodiscard]] std::size_t instance_index(std::string_view id) const;
    [[nodiscard]] std::size_t type_index(std::string_view id) const;
    [[nodiscard]] Bits instance_set(std::span<const std::string> ids) const;
    [[nodiscard]] Bits type_set(std::span<const std::string> ids) const;
    [[nodiscard]] std::vector<std::string> instance_names(const Bits& x) const;
    [[nodiscard]] std::vector<std::string> type_names(const Bits& y) const;

    /// X′: the types incident to every instance of X.
    [[nodiscard]] Bits derive_types(const Bits& instances) const;
    /// Y′: the instances incident to every type of Y.
    [[nodiscard]] Bits derive_instances(const Bits& types) const;

    [[nodiscard]] bool is_formal_concept(const Bits& extent, const Bits& intent) const;

    bool operator==(const Classification& o) const {
        return instances_ == o.instances_ && types_ == o.types_ && rows_ == o.rows_;
    }

private:
    void index();

    std::vector<std::string> instances_;
    std::vector<std::string> types_;
    std::vector<Bits> rows_;
    std::vector<Bits> columns_;
    std::unordered_map<std::string, std::size_t> instance_index_;
    std::unordered_map<std::string, std::size_t> type_index_;
};

/// Name-based derivation operators; throw ForeignElement on unknown ids.
std::vector<std::string> derive_types(const Classification& ctx, std::span<const std::string> instances);
std::vector<std::string> derive_instances(const Classification& ctx, std::span<const std::string> types);
bool is_formal_concept(const Classification& ctx, std::span<const std::string> extent,
                       std::span<const std::string> intent);

}  // namespace lot::fca
