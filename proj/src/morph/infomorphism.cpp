#include "lot/morph/infomorphism.hpp"

#include "lot/error.hpp"
#include "lot/fca/kernels.hpp"

namespace lot::morph {

InfomorphismCheck check_infomorphism(const fca::Classification& a, const fca::Classification& b,
                                     std::span<const std::size_t> type_map, std::span<const std::size_t> instance_map,
                                     Exec exec) {
    if (type_map.size() != a.type_count()) throw ValidationError("type map is not total on typ(A)");
    if (instance_map.size() != b.instance_count()) throw ValidationError("instance map is not total on inst(B)");
    for (auto t : type_map)
        if (t >= b.type_count()) throw ValidationError("type map leaves typ(B)");
    for (auto i : instance_map)
        if (i >= a.instance_count()) throw ValidationError("instance map leaves inst(A)");

    const std::size_t types = a.type_count();
    auto first_bad_type = [&](std::size_t inst_b) -> std::optional<std::size_t> {
        for (std::size_t t = 0; t < types; ++t)
            if (a.incident(instance_map[inst_b], t) != b.incident(inst_b, type_map[t])) return t;
        return std::nullopt;
    };
    auto row = fca::find_first(
        b.instance_count(), [&](std::size_t i) { return first_bad_type(i).has_value(); }, exec);
    if (!row) return {};
    return {false, std::make_pair(*row, *first_bad_type(*row))};
}

InfomorphismCheck check_infomorphism(const fca::Classification& a, const fca::Classification& b,
                                     const std::map<std::string, std::string>& type_map,
                                     const std::map<std::string, std::string>& instance_map, Exec exec) {
    std::vector<std::size_t> types, instances;
    for (const auto& t : a.types()) {
        auto it = type_map.find(t);
        if (it == type_map.end()) throw ValidationError("type '" + t + "' is not mapped");
        types.push_back(b.type_index(it->second));
    }
    for (const auto& i : b.instances()) {
        auto it = instance_map.find(i);
        if (it == instance_map.end()) throw ValidationError("instance '" + i + "' is not mapped");
        instances.push_back(a.instance_index(it->second));
    }
    for (const auto& [t, _] : type_map) (void)a.type_index(t);
    for (const auto& [i, _] : instance_map) (void)b.instance_index(i);
    return check_infomorphism(a, b, types, instances, exec);
}

TruthInfomorphism::TruthInfomorphism(const Interpretation& h, truth::TruthClassification source,
                                     truth::TruthClassification target, Exec exec)
    : source_(std::move(source)), target_(std::move(target)) {
    if (!logic::same_signature(h.source(), source_.signature()) ||
        !logic::same_signature(h.target(), target_.signature()))
        throw SignatureMismatch("interpretation does not connect the two classifications' signatures");

    std::string missing;
    for (const auto& phi : source_.pool()) {
        auto image = translate(h, phi);
        if (auto t = target_.find_sentence(image))
            type_map_.push_back(*t);
        else
            missing += "\n  " + image.key() + "   (translation of " + phi.key() + ")";
    }
    if (!missing.empty()) throw ValidationError("translated pool sentences missing from the target pool:" + missing);

    for (std::size_t m = 0; m < target_.models().size(); ++m) {
        auto r = reduct(h, target_.models()[m]);
        auto i = source_.find_model(r);
        if (!i)
            throw ValidationError("reduct of target model " + std::to_string(m) +
                                  " is not among the source models:\n" + logic::print_structure(r));
        instance_map_.push_back(*i);
    }

    auto check = check_infomorphism(source_.classification(), target_.classification(), type_map_, instance_map_, exec);
    if (!check) {
        auto [m, t] = *check.witness;
        throw ConsistencyError("satisfaction transfer fails at target model " + std::to_string(m) + " and sentence '" +
                               source_.pool()[t].key() + "'");
    }
}

ConceptMorphism::ConceptMorphism(const TruthInfomorphism& im, const truth::TheoryLattice& source,
                                 const truth::TheoryLattice& target, Exec exec)
    : source_(source), target_(target) {
    const auto& tc1 = source_.classification();
    const auto& tc2 = target_.classification();
    if (tc1.id() != im.source().id() || tc2.id() != im.target().id())
        throw ForeignElement("lattices were not built from the infomorphism's classifications");
    const auto& tmap = im.type_map();

    for (const auto& c1 : source_.theories()) {
        fca::Bits image(tc2.pool().size());
        for (auto t : fca::members(c1.intent())) image.set(tmap[t]);
        dir_.push_back(target_.id_of(tc2.closure(image)));
    }
    for (std::size_t id2 = 0; id2 < target_.size(); ++id2) {
        const auto& c2 = target_.theory(id2);
        fca::Bits pre(tc1.pool().size());
        for (std::size_t t = 0; t < tmap.size(); ++t)
            if (c2.intent().test(tmap[t])) pre.set(t);
        auto closed = source_.concepts().find_intent(pre);
        if (!closed)
            throw ConsistencyError("inverse image of target theory " + std::to_string(id2) + " is not closed");
        inv_.push_back(*closed);
    }

    const auto& l1 = source_.concepts();
    const auto& l2 = target_.concepts();
    const std::size_t n1 = l1.size(), n2 = l2.size();

    auto mono_dir = fca::find_first(
        n1 * n1,
        [&](std::size_t k) {
            auto a = k / n1, b = k % n1;
            return l1.leq(a, b) && !l2.leq(dir_[a], dir_[b]);
        },
        exec);
    if (mono_dir)
        throw ConsistencyError("dir is not monotone at source theories " + std::to_string(*mono_dir / n1) + ", " +
                               std::to_string(*mono_dir % n1));
    auto mono_inv = fca::find_first(
        n2 * n2,
        [&](std::size_t k) {
            auto a = k / n2, b = k % n2;
            return l2.leq(a, b) && !l1.leq(inv_[a], inv_[b]);
        },
        exec);
    if (mono_inv)
        throw ConsistencyError("inv is not monotone at target theories " + std::to_string(*mono_inv / n2) + ", " +
                               std::to_string(*mono_inv % n2));
    auto adj = fca::find_first(
        n1 * n2,
        [&](std::size_t k) {
            auto a = k / n2, b = k % n2;
            bool lhs = target_.theory(dir_[a]).intent().is_subset_of(target_.theory(b).intent());
            bool rhs = source_.theory(a).intent().is_subset_of(source_.theory(inv_[b]).intent());
            return lhs != rhs;
        },
        exec);
    if (adj)
        throw ConsistencyError("adjunction fails at source theory " + std::to_string(*adj / n2) + " and target theory " +
                               std::to_string(*adj % n2));
}

truth::ClosedTheory ConceptMorphism::dir(const truth::ClosedTheory& c1) const {
    return target_.theory(dir_[source_.id_of(c1)]);
}

truth::ClosedTheory ConceptMorphism::inv(const truth::ClosedTheory& c2) const {
    return source_.theory(inv_[target_.id_of(c2)]);
}

bool is_theory_morphism(const LanguageMorphism& f, const truth::Theory& t1, const truth::Theory& t2,
                        const truth::TruthClassification& target) {
    if (!logic::same_signature(f.source(), t1.signature()))
        throw SignatureMismatch("source theory is not over the morphism's source signature");
    if (!logic::same_signature(f.target(), t2.signature()) || !logic::same_signature(f.target(), target.signature()))
        throw SignatureMismatch("target theory is not over the morphism's target signature");
    for (const auto& phi : t1.axioms())
        if (!target.entails(t2, translate(f, phi))) return false;
    return true;
}

}  // namespace lot::morph
