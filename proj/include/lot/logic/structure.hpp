#pragma once

#include "lot/logic/formula.hpp"
#include "lot/logic/signature.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lot::logic {

/// Finite nonempty carrier per entity type, indexed like Signature::entities().
class CarrierAssignment {
public:
    /// Throws ValidationError on a missing, unknown, empty or duplicate-element carrier.
    CarrierAssignment(const Signature& sig, const std::map<std::string, std::vector<std::string>>& by_name);
    static CarrierAssignment from_sorts(const Signature& sig, std::vector<std::vector<std::string>> by_sort);

    [[nodiscard]] const std::vector<std::string>& of(std::size_t sort) const { return carriers_[sort]; }
    [[nodiscard]] std::size_t size(std::size_t sort) const { return carriers_[sort].size(); }
    [[nodiscard]] std::size_t sorts() const { return carriers_.size(); }
    [[nodiscard]] std::optional<std::size_t> find(std::size_t sort, std::string_view element) const;

    auto operator<=>(const CarrierAssignment&) const = default;
    bool operator==(const CarrierAssignment&) const = default;

private:
    CarrierAssignment() = default;
    void check(const Signature& sig) const;

    std::vector<std::vector<std::string>> carriers_;
};

/// Parses `E=a,b` style carrier specs, one per sort.
CarrierAssignment parse_carriers(const Signature& sig, std::span<const std::string> specs);

/// A finite model. Relation extensions are bit sets over the tuples of the profile's
/// carrier product in lexicographic order (first argument most significant).
class Structure {
public:
    Structure(SignaturePtr sig, std::shared_ptr<const CarrierAssignment> carriers,
              std::vector<boost::dynamic_bitset<>> relations, std::vector<std::size_t> constants);

    [[nodiscard]] const SignaturePtr& signature() const { return sig_; }
    [[nodiscard]] const Signature& sig() const { return *sig_; }
    [[nodiscard]] const CarrierAssignment& carriers() const { return *carriers_; }
    [[nodiscard]] const std::shared_ptr<const CarrierAssignment>& carriers_ptr() const { return carriers_; }
    [[nodiscard]] const boost::dynamic_bitset<>& extension(std::size_t relation) const { return relations_[relation]; }
    [[nodiscard]] std::size_t denotation(std::size_t constant) const { return constants_[constant]; }

    /// Number of tuples in the carrier product of `relation`'s profile.
    [[nodiscard]] std::size_t tuple_space(std::size_t relation) const;
    [[nodiscard]] std::size_t tuple_index(std::size_t relation, std::span<const std::size_t> elements) const;
    [[nodiscard]] bool holds(std::size_t relation, std::span<const std::size_t> elements) const;

    bool operator==(const Structure& o) const;
    bool operator<(const Structure& o) const;

private:
    SignaturePtr sig_;
    std::shared_ptr<const CarrierAssignment> carriers_;
    std::vector<boost::dynamic_bitset<>> relations_;
    std::vector<std::size_t> constants_;
};

/// Tarskian truth. Throws SignatureMismatch.
bool satisfies(const Structure& m, const Sentence& s);

/// Truth of an open formula under an assignment of carrier indices to its free slots.
bool evaluate(const Structure& m, const Formula& f, std::span<const std::size_t> free_assignment);

/// Closed-form structure count over fixed carriers; nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> structure_count(const Signature& sig, const CarrierAssignment& carriers);

inline constexpr std::uint64_t default_model_cap = std::uint64_t{1} << 20;

/// Every structure over the carriers. Index k decodes as: the relation bits (relations
/// in declaration order, tuples in lexicographic order, first relation in the least
/// significant bits) form the low mixed-radix digit, constants (declaration order, first
/// constant least significant) the high digits. Throws CapExceeded above `cap`.
std::vector<Structure> enumerate_structures(const SignaturePtr& sig, const CarrierAssignment& carriers,
                                            std::uint64_t cap = default_model_cap);

/// The k-th structure of enumerate_structures' order.
Structure structure_at(const SignaturePtr& sig, const std::shared_ptr<const CarrierAssignment>& carriers,
                       std::uint64_t k);

/// { φ ∈ pool | m ⊨ φ }, in pool order.
std::vector<Sentence> theory_of(const Structure& m, std::span<const Sentence> pool);

/// Model file: `universe SORT = {a, b}`, `REL = {(a), (a,b)}` (1-tuples may omit the
/// parentheses), `CONST = a`. Several models are separated by lines holding `---`.
/// Relations not mentioned are empty; every sort and constant must be given.
std::vector<Structure> parse_models(const SignaturePtr& sig, std::string_view text);

/// One model in the file format above (canonical layout, no trailing separator).
std::string print_structure(const Structure& m);

}  // namespace lot::logic
