#include "lot/fca/lattice.hpp"

#include "lot/error.hpp"

#include <algorithm>

namespace lot::fca {

bool canonical_less(const Bits& a, const Bits& b) {
    auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    auto i = a.find_first();
    auto j = b.find_first();
    while (i != Bits::npos && j != Bits::npos) {
        if (i != j) return i < j;
        i = a.find_next(i);
        j = b.find_next(j);
    }
    return false;
}

ConceptLattice::ConceptLattice(Classification ctx, LatticeOptions opts) : ctx_(std::move(ctx)) {
    auto intents = enumerate_intents(ctx_, opts.exec, opts.cap);
    concepts_.reserve(intents.size());
    for (auto& intent : intents) {
        Bits extent = ctx_.derive_instances(intent);
        if (ctx_.derive_types(extent) != intent) throw ConsistencyError("enumerated intent is not closed");
        concepts_.push_back({std::move(extent), std::move(intent)});
    }
    std::sort(concepts_.begin(), concepts_.end(),
              [](const FormalConcept& a, const FormalConcept& b) { return canonical_less(a.extent, b.extent); });
    for (std::size_t i = 0; i < concepts_.size(); ++i)
        if (!by_intent_.emplace(concepts_[i].intent, i).second)
            throw ConsistencyError("concept enumerated twice");

    iota_.resize(ctx_.instance_count());
    for (std::size_t i = 0; i < ctx_.instance_count(); ++i) iota_[i] = by_intent_.at(ctx_.row(i));
    tau_.resize(ctx_.type_count());
    for (std::size_t t = 0; t < ctx_.type_count(); ++t)
        tau_[t] = by_intent_.at(ctx_.derive_types(ctx_.column(t)));
}

std::optional<std::size_t> ConceptLattice::find_intent(const Bits& intent) const {
    auto it = by_intent_.find(intent);
    if (it == by_intent_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> ConceptLattice::find(const FormalConcept& c) const {
    if (c.intent.size() != ctx_.type_count()) return std::nullopt;
    auto i = find_intent(c.intent);
    if (!i || concepts_[*i].extent != c.extent) return std::nullopt;
    return i;
}

std::size_t ConceptLattice::index_of(const FormalConcept& c) const {
    if (auto i = find(c)) return *i;
    throw ForeignElement("concept does not belong to this lattice");
}

std::size_t ConceptLattice::meet(std::span<const std::size_t> cs) const {
    Bits extent(ctx_.instance_count());
    extent.set();
    Bits intents(ctx_.type_count());
    for (auto c : cs) {
        if (c >= concepts_.size()) throw ForeignElement("concept index out of range");
        extent &= concepts_[c].extent;
        intents |= concepts_[c].intent;
    }
    Bits intent = ctx_.derive_types(ctx_.derive_instances(intents));
    std::size_t idx = by_intent_.at(intent);
    if (concepts_[idx].extent != extent) throw ConsistencyError("meet: extent and intent disagree");
    return idx;
}

std::size_t ConceptLattice::join(std::span<const std::size_t> cs) const {
    Bits extents(ctx_.instance_count());
    Bits intent(ctx_.type_count());
    intent.set();
    for (auto c : cs) {
        if (c >= concepts_.size()) throw ForeignElement("concept index out of range");
        extents |= concepts_[c].extent;
        intent &= concepts_[c].intent;
    }
    Bits extent = ctx_.derive_instances(ctx_.derive_types(extents));
    std::size_t idx = by_intent_.at(intent);
    if (concepts_[idx].extent != extent) throw ConsistencyError("join: extent and intent disagree");
    return idx;
}

std::vector<std::vector<std::size_t>> ConceptLattice::upper_covers() const {
    const std::size_t n = concepts_.size();
    std::vector<std::vector<std::size_t>> covers(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Strict supersets have larger extents and therefore larger indices.
        std::vector<std::size_t> above;
        for (std::size_t j = i + 1; j < n; ++j)
            if (concepts_[j].extent.count() > concepts_[i].extent.count() &&
                concepts_[i].extent.is_subset_of(concepts_[j].extent))
                above.push_back(j);
        for (auto j : above) {
            bool minimal = std::none_of(above.begin(), above.end(), [&](std::size_t k) {
                return k != j && concepts_[k].extent.is_proper_subset_of(concepts_[j].extent);
            });
            if (minimal) covers[i].push_back(j);
        }
    }
    return covers;
}

DensityReport ConceptLattice::density() const {
    DensityReport r{true, true};
    for (std::size_t c = 0; c < concepts_.size(); ++c) {
        std::vector<std::size_t> below, above;
        for (std::size_t i = 0; i < iota_.size(); ++i)
            if (leq(iota_[i], c)) below.push_back(iota_[i]);
        for (std::size_t t = 0; t < tau_.size(); ++t)
            if (leq(c, tau_[t])) above.push_back(tau_[t]);
        if (join(below) != c) r.join_dense = false;
        if (meet(above) != c) r.meet_dense = false;
    }
    return r;
}

FormalConcept lattice_meet(const ConceptLattice& lat, std::span<const FormalConcept> cs) {
    std::vector<std::size_t> idx;
    for (const auto& c : cs) idx.push_back(lat.index_of(c));
    return lat.concept_at(lat.meet(idx));
}

FormalConcept lattice_join(const ConceptLattice& lat, std::span<const FormalConcept> cs) {
    std::vector<std::size_t> idx;
    for (const auto& c : cs) idx.push_back(lat.index_of(c));
    return lat.concept_at(lat.join(idx));
}

FormalConcept instance_embedding(const ConceptLattice& lat, std::string_view instance) {
    return lat.concept_at(lat.instance_concept(lat.context().instance_index(instance)));
}

FormalConcept type_embedding(const ConceptLattice& lat, std::string_view type) {
    return lat.concept_at(lat.type_concept(lat.context().type_index(type)));
}

Classification basic_theorem_roundtrip(const ConceptLattice& lat) {
    const auto& ctx = lat.context();
    std::vector<Bits> rows(ctx.instance_count(), Bits(ctx.type_count()));
    for (std::size_t i = 0; i < ctx.instance_count(); ++i)
        for (std::size_t t = 0; t < ctx.type_count(); ++t)
            if (lat.leq(lat.instance_concept(i), lat.type_concept(t))) rows[i].set(t);
    return Classification::from_rows(ctx.instances(), ctx.types(), std::move(rows));
}

}  // namespace lot::fca
