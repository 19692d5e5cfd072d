#include "lot/fca/classification.hpp"

#include "lot/error.hpp"

namespace lot::fca {

std::vector<std::size_t> members(const Bits& b) {
    std::vector<std::size_t> out;
    out.reserve(b.count());
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(i);
    return out;
}

Classification::Classification(std::vector<std::string> instances, std::vector<std::string> types,
                               const std::vector<std::pair<std::string, std::string>>& incidence)
    : instances_(std::move(instances)), types_(std::move(types)) {
    rows_.assign(instances_.size(), Bits(types_.size()));
    index();
    for (const auto& [i, t] : incidence) {
        auto ii = instance_index_.find(i);
        auto ti = type_index_.find(t);
        if (ii == instance_index_.end()) throw ValidationError("incidence names undeclared instance '" + i + "'");
        if (ti == type_index_.end()) throw ValidationError("incidence names undeclared type '" + t + "'");
        rows_[ii->second].set(ti->second);
        columns_[ti->second].set(ii->second);
    }
}

Classification Classification::from_rows(std::vector<std::string> instances, std::vector<std::string> types,
                                         std::vector<Bits> rows) {
    Classification c;
    c.instances_ = std::move(instances);
    c.types_ = std::move(types);
    c.rows_ = std::move(rows);
    if (c.rows_.size() != c.instances_.size()) throw ValidationError("one incidence row per instance required");
    for (const auto& r : c.rows_)
        if (r.size() != c.types_.size()) throw ValidationError("incidence row of the wrong width");
    c.index();
    for (std::size_t i = 0; i < c.rows_.size(); ++i)
        for (auto t = c.rows_[i].find_first(); t != Bits::npos; t = c.rows_[i].find_next(t)) c.columns_[t].set(i);
    return c;
}

void Classification::index() {
    for (std::size_t i = 0; i < instances_.size(); ++i)
        if (!instance_index_.emplace(instances_[i], i).second)
            throw ValidationError("duplicate instance id '" + instances_[i] + "'");
    for (std::size_t t = 0; t < types_.size(); ++t)
        if (!type_index_.emplace(types_[t], t).second) throw ValidationError("duplicate type id '" + types_[t] + "'");
    columns_.assign(types_.size(), Bits(instances_.size()));
}

std::size_t Classification::incidence_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
}

std::size_t Classification::instance_index(std::string_view id) const {
    auto it = instance_index_.find(std::string(id));
    if (it == instance_index_.end()) throw ForeignElement("unknown instance id '" + std::string(id) + "'");
    return it->second;
}

std::size_t Classification::type_index(std::string_view id) const {
    auto it = type_index_.find(std::string(id));
    if (it == type_index_.end()) throw ForeignElement("unknown type id '" + std::string(id) + "'");
    return it->second;
}

Bits Classification::instance_set(std::span<const std::string> ids) const {
    Bits out(instances_.size());
    for (const auto& id : ids) out.set(instance_index(id));
    return out;
}

Bits Classification::type_set(std::span<const std::string> ids) const {
    Bits out(types_.size());
    for (const auto& id : ids) out.set(type_index(id));
    return out;
}

std::vector<std::string> Classification::instance_names(const Bits& x) const {
    std::vector<std::string> out;
    for (auto i : members(x)) out.push_back(instances_[i]);
    return out;
}

std::vector<std::string> Classification::type_names(const Bits& y) const {
    std::vector<std::string> out;
    for (auto t : members(y)) out.push_back(types_[t]);
    return out;
}

Bits Classification::derive_types(const Bits& instances) const {
    if (instances.size() != instances_.size()) throw ValidationError("instance set of the wrong width");
    Bits out(types_.size());
    out.set();
    for (auto i = instances.find_first(); i != Bits::npos; i = instances.find_next(i)) out &= rows_[i];
    return out;
}

Bits Classification::derive_instances(const Bits& types) const {
    if (types.size() != types_.size()) throw ValidationError("type set of the wrong width");
    Bits out(instances_.size());
    out.set();
    for (auto t = types.find_first(); t != Bits::npos; t = types.find_next(t)) out &= columns_[t];
    return out;
}

bool Classification::is_formal_concept(const Bits& extent, const Bits& intent) const {
    return derive_types(extent) == intent && derive_instances(intent) == extent;
}

std::vector<std::string> derive_types(const Classification& ctx, std::span<const std::string> instances) {
    return ctx.type_names(ctx.derive_types(ctx.instance_set(instances)));
}

std::vector<std::string> derive_instances(const Classification& ctx, std::span<const std::string> types) {
    return ctx.instance_names(ctx.derive_instances(ctx.type_set(types)));
}

bool is_formal_concept(const Classification& ctx, std::span<const std::string> extent,
                       std::span<const std::string> intent) {
    return ctx.is_formal_concept(ctx.instance_set(extent), ctx.type_set(intent));
}

}  // namespace lot::fca
