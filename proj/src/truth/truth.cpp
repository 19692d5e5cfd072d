#include "lot/truth/truth.hpp"

#include "lot/error.hpp"

#include <atomic>
#include <exception>

#include <omp.h>

namespace lot::truth {

namespace {

std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

}  // namespace

Theory::Theory(SignaturePtr sig, std::vector<Sentence> axioms) : sig_(std::move(sig)) {
    for (auto& s : axioms) {
        if (!logic::same_signature(s.signature(), sig_))
            throw SignatureMismatch("axiom '" + s.key() + "' is over a different signature");
        bool dup = false;
        for (const auto& a : axioms_) dup = dup || a == s;
        if (!dup) axioms_.push_back(std::move(s));
    }
}

std::vector<Bits> materialize_incidence(std::span<const Structure> models, std::span<const Sentence> pool,
                                        Exec exec) {
    std::vector<Bits> rows(models.size(), Bits(pool.size()));
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < models.size(); ++i)
            for (std::size_t t = 0; t < pool.size(); ++t)
                if (logic::satisfies(models[i], pool[t])) rows[i].set(t);
        return rows;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(models.size()); ++si) {
        auto i = static_cast<std::size_t>(si);
        try {
            for (std::size_t t = 0; t < pool.size(); ++t)
                if (logic::satisfies(models[i], pool[t])) rows[i].set(t);
        } catch (...) {
#pragma omp critical(lot_incidence_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

TruthClassification TruthClassification::build(SignaturePtr sig, std::vector<Structure> models,
                                               std::vector<Sentence> pool, BuildOptions opts) {
    if (models.empty()) throw ValidationError("a truth classification needs at least one model");
    if (models.size() > opts.model_cap)
        throw CapExceeded("model count " + std::to_string(models.size()) + " exceeds the cap " +
                              std::to_string(opts.model_cap),
                          models.size());
    auto d = std::make_shared<Data>();
    d->id = next_id();
    d->sig = sig;
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (!logic::same_signature(models[i].signature(), sig))
            throw SignatureMismatch("model " + std::to_string(i) + " is over a different signature");
        if (!d->model_index.emplace(models[i], i).second)
            throw ValidationError("model " + std::to_string(i) + " duplicates model " +
                                  std::to_string(d->model_index.at(models[i])));
    }
    for (std::size_t t = 0; t < pool.size(); ++t) {
        if (!logic::same_signature(pool[t].signature(), sig))
            throw SignatureMismatch("pool sentence '" + pool[t].key() + "' is over a different signature");
        if (!d->pool_index.emplace(pool[t].key(), t).second)
            throw ValidationError("pool sentence '" + pool[t].key() + "' occurs twice (up to renaming of bound variables)");
    }
    auto rows = materialize_incidence(models, pool, opts.exec);
    std::vector<std::string> instance_ids, type_ids;
    for (std::size_t i = 0; i < models.size(); ++i) instance_ids.push_back(std::to_string(i));
    for (const auto& s : pool) type_ids.push_back(s.key());
    d->ctx = fca::Classification::from_rows(std::move(instance_ids), std::move(type_ids), std::move(rows));
    d->models = std::move(models);
    d->pool = std::move(pool);
    return TruthClassification(std::move(d));
}

TruthClassification TruthClassification::build(SignaturePtr sig, const logic::CarrierAssignment& carriers,
                                               std::vector<Sentence> pool, BuildOptions opts) {
    auto models = logic::enumerate_structures(sig, carriers, opts.model_cap);
    return build(std::move(sig), std::move(models), std::move(pool), opts);
}

std::optional<std::size_t> TruthClassification::find_sentence(const Sentence& s) const {
    if (!logic::same_signature(s.signature(), data_->sig)) return std::nullopt;
    auto it = data_->pool_index.find(s.key());
    if (it == data_->pool_index.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> TruthClassification::find_model(const Structure& m) const {
    if (!logic::same_signature(m.signature(), data_->sig)) return std::nullopt;
    auto it = data_->model_index.find(m);
    if (it == data_->model_index.end()) return std::nullopt;
    return it->second;
}

std::size_t TruthClassification::sentence_index(const Sentence& s) const {
    if (!logic::same_signature(s.signature(), data_->sig))
        throw SignatureMismatch("sentence '" + s.key() + "' is over a different signature");
    if (auto i = find_sentence(s)) return *i;
    throw ValidationError("sentence '" + s.key() +
                          "' is not in the pool; add it to the pool and rebuild the classification");
}

Bits TruthClassification::pool_subset(std::span<const Sentence> sentences) const {
    Bits out(data_->pool.size());
    for (const auto& s : sentences) out.set(sentence_index(s));
    return out;
}

Bits TruthClassification::models_of(std::span<const Sentence> sentences) const {
    Bits out(data_->models.size());
    out.set();
    for (const auto& s : sentences) {
        if (!logic::same_signature(s.signature(), data_->sig))
            throw SignatureMismatch("sentence '" + s.key() + "' is over a different signature");
        if (auto t = find_sentence(s)) {
            out &= data_->ctx.column(*t);
            continue;
        }
        for (auto m = out.find_first(); m != Bits::npos; m = out.find_next(m))
            if (!logic::satisfies(data_->models[m], s)) out.reset(m);
    }
    return out;
}

Bits TruthClassification::models_of(const Bits& pool_subset) const { return data_->ctx.derive_instances(pool_subset); }

Bits TruthClassification::theory_of_models(const Bits& models) const { return data_->ctx.derive_types(models); }

ClosedTheory TruthClassification::closure(const Bits& pool_subset) const {
    return ClosedTheory(id(), theory_of_models(models_of(pool_subset)));
}

ClosedTheory TruthClassification::closure(const Theory& t) const {
    if (!logic::same_signature(t.signature(), data_->sig))
        throw SignatureMismatch("theory is over a different signature");
    return closure(pool_subset(t.axioms()));
}

bool TruthClassification::entails(const Theory& t, const Sentence& phi) const {
    if (!logic::same_signature(t.signature(), data_->sig) || !logic::same_signature(phi.signature(), data_->sig))
        throw SignatureMismatch("entailment query over a different signature");
    Bits mods = models_of(t.axioms());
    if (auto idx = find_sentence(phi)) return mods.is_subset_of(data_->ctx.column(*idx));
    for (auto m = mods.find_first(); m != Bits::npos; m = mods.find_next(m))
        if (!logic::satisfies(data_->models[m], phi)) return false;
    return true;
}

bool TruthClassification::theory_leq(const Theory& t1, const Theory& t2) const {
    return closure(t2).intent().is_subset_of(closure(t1).intent());
}

ClosedTheory TruthClassification::object_concept(std::size_t model) const {
    if (model >= data_->models.size()) throw ForeignElement("unknown model index " + std::to_string(model));
    return ClosedTheory(id(), data_->ctx.row(model));
}

ClosedTheory TruthClassification::attribute_concept(const Sentence& s) const {
    Bits single(data_->pool.size());
    if (auto i = find_sentence(s))
        single.set(*i);
    else
        throw ForeignElement("sentence '" + s.key() + "' is not in the pool");
    return closure(single);
}

std::vector<Sentence> TruthClassification::sentences(const Bits& pool_subset) const {
    std::vector<Sentence> out;
    for (auto t : fca::members(pool_subset)) out.push_back(data_->pool[t]);
    return out;
}

Bits TruthClassification::extent(const ClosedTheory& c) const {
    check_owned(c);
    return models_of(c.intent());
}

void TruthClassification::check_owned(const ClosedTheory& c) const {
    if (c.owner() != id() || c.intent().size() != data_->pool.size())
        throw ForeignElement("closed theory belongs to a different truth classification");
    if (theory_of_models(models_of(c.intent())) != c.intent())
        throw ForeignElement("theory is not closed in this truth classification");
}

TheoryLattice::TheoryLattice(TruthClassification tc, fca::LatticeOptions opts)
    : tc_(std::move(tc)), lattice_(tc_.classification(), opts) {
    theories_.reserve(lattice_.size());
    for (const auto& c : lattice_.concepts()) theories_.emplace_back(tc_.id(), c.intent);
}

std::size_t TheoryLattice::id_of(const ClosedTheory& c) const {
    if (c.owner() != tc_.id()) throw ForeignElement("closed theory belongs to a different lattice");
    if (auto i = lattice_.find_intent(c.intent())) return *i;
    throw ForeignElement("theory is not a closed theory of this lattice");
}

bool TheoryLattice::leq(const ClosedTheory& c1, const ClosedTheory& c2) const {
    return lattice_.leq(id_of(c1), id_of(c2));
}

ClosedTheory TheoryLattice::join(const ClosedTheory& c1, const ClosedTheory& c2) const {
    check_member(c1);
    check_member(c2);
    return ClosedTheory(tc_.id(), c1.intent() & c2.intent());
}

ClosedTheory TheoryLattice::meet(const ClosedTheory& c1, const ClosedTheory& c2) const {
    check_member(c1);
    check_member(c2);
    ClosedTheory by_closure = tc_.closure(c1.intent() | c2.intent());
    Bits common = tc_.models_of(c1.intent()) & tc_.models_of(c2.intent());
    ClosedTheory by_models(tc_.id(), tc_.theory_of_models(common));
    if (!(by_closure == by_models))
        throw ConsistencyError("meet: closure of the union differs from the theory of the common models");
    return by_closure;
}

}  // namespace lot::truth
