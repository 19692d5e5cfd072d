#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "lot/error.hpp"
#include "lot/fca/io.hpp"
#include "lot/truth/export.hpp"
#include "lot/truth/truth.hpp"

#include <set>

using namespace lot;
using namespace lot::truth;
using fixtures::fix_sig;
using fixtures::labels;
using fixtures::s;

namespace {

Theory th(std::initializer_list<int> ids) {
    std::vector<Sentence> ax;
    for (int i : ids) ax.push_back(s(i));
    return Theory(fix_sig(), ax);
}

Bits subset_bits(std::size_t width, std::uint64_t mask) {
    Bits b(width);
    for (std::size_t k = 0; k < width; ++k)
        if ((mask >> k) & 1) b.set(k);
    return b;
}

// Closure computed straight from satisfaction, without the materialized incidence.
Bits oracle_closure(const std::vector<Structure>& models, const std::vector<Sentence>& pool, const Bits& t) {
    Bits out(pool.size());
    out.set();
    for (const auto& m : models) {
        bool model_of_t = true;
        for (std::size_t k = 0; k < pool.size(); ++k)
            if (t.test(k) && !logic::satisfies(m, pool[k])) model_of_t = false;
        if (!model_of_t) continue;
        for (std::size_t k = 0; k < pool.size(); ++k)
            if (!logic::satisfies(m, pool[k])) out.reset(k);
    }
    return out;
}

}  // namespace

TEST_CASE("build: incidence counts on the fixture") {
    for (auto exec : {Exec::serial, Exec::parallel}) {
        auto tc = fixtures::fix_tc(exec);
        const auto& ctx = tc.classification();
        CHECK(ctx.instance_count() == 16);
        CHECK(ctx.type_count() == 4);
        CHECK(ctx.incidence_count() == 29);
        CHECK(ctx.column(0).count() == 4);
        CHECK(ctx.column(1).count() == 4);
        CHECK(ctx.column(2).count() == 12);
        CHECK(ctx.column(3).count() == 9);
        CHECK(ctx.types()[0] == s(1).key());
        CHECK(ctx.instances()[15] == "15");
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t k = 0; k < 4; ++k)
                CHECK(ctx.incident(i, k) == logic::satisfies(tc.models()[i], tc.pool()[k]));
    }
    CHECK(fixtures::fix_tc(Exec::serial).classification() == fixtures::fix_tc(Exec::parallel).classification());
}

TEST_CASE("build from carriers equals build from the enumerated models") {
    auto sig = fix_sig();
    auto a = TruthClassification::build(sig, fixtures::carriers_ab(*sig), fixtures::fix_pool());
    CHECK(a.classification() == fixtures::fix_tc().classification());
    auto tiny = logic::CarrierAssignment(*sig, {{"E", {"a"}}});
    CHECK_THROWS_AS((void)TruthClassification::build(sig, tiny, fixtures::fix_pool(), {3, Exec::serial}), CapExceeded);
}

TEST_CASE("build: degenerate and error cases") {
    auto sig = fix_sig();
    auto empty_pool = TruthClassification::build(sig, fixtures::fix_models(), {});
    TheoryLattice lat(empty_pool);
    CHECK(lat.size() == 1);
    CHECK(lat.top().intent().size() == 0);

    auto other = logic::parse_signature("entity E\nrelation P(E)\n");
    auto foreign = logic::parse_models(other, "universe E = {a}\nP = {a}\n");
    auto models = fixtures::fix_models();
    models.push_back(foreign[0]);
    CHECK_THROWS_AS((void)TruthClassification::build(sig, models, fixtures::fix_pool()), SignatureMismatch);
    auto foreign_pool = fixtures::fix_pool();
    foreign_pool.push_back(logic::parse_sentence(other, "exists x:E. P(x)"));
    CHECK_THROWS_AS((void)TruthClassification::build(sig, fixtures::fix_models(), foreign_pool), SignatureMismatch);
    CHECK_THROWS_AS((void)TruthClassification::build(sig, std::vector<Structure>{}, fixtures::fix_pool()), ValidationError);

    auto dup_models = fixtures::fix_models();
    dup_models.push_back(dup_models[3]);
    CHECK_THROWS_AS((void)TruthClassification::build(sig, dup_models, fixtures::fix_pool()), ValidationError);
    auto dup_pool = fixtures::fix_pool();
    dup_pool.push_back(logic::parse_sentence(sig, "forall y:E. P(y)"));  // alpha-variant of s1
    CHECK_THROWS_AS((void)TruthClassification::build(sig, fixtures::fix_models(), dup_pool), ValidationError);
}

TEST_CASE("closure examples") {
    auto tc = fixtures::fix_tc();
    CHECK(tc.closure(th({1})).intent() == labels(4, {1, 3}));
    CHECK(tc.closure(th({})).intent() == labels(4, {}));
    CHECK(tc.closure(th({1, 2, 3, 4})).intent() == labels(4, {1, 2, 3, 4}));
    CHECK(tc.closure(th({2})).intent() == labels(4, {2, 4}));
    CHECK(tc.closure(th({3})).intent() == labels(4, {3}));
}

TEST_CASE("closure rejects sentences outside the pool") {
    auto tc = fixtures::fix_tc();
    Theory t(fix_sig(), {logic::parse_sentence(fix_sig(), "exists x:E. Q(x)")});
    try {
        (void)tc.closure(t);
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("exists x:E. Q(x)") != std::string::npos);
        CHECK(msg.find("pool") != std::string::npos);
    }
}

TEST_CASE("entailment examples") {
    auto tc = fixtures::fix_tc();
    auto sig = fix_sig();
    CHECK(tc.entails(th({1}), logic::parse_sentence(sig, "exists x:E. P(x)")));
    CHECK_FALSE(tc.entails(th({}), s(1)));
    CHECK(tc.entails(th({1}), logic::parse_sentence(sig, "exists x:E. P(x) | Q(x)")));
    CHECK_FALSE(tc.entails(th({1}), logic::parse_sentence(sig, "exists x:E. Q(x)")));
    for (int i = 1; i <= 4; ++i) CHECK(tc.entails(th({1, 2, 3, 4}), s(i)));
    CHECK(tc.entails(th({2}), s(2)));
    // Axioms outside the pool are allowed for entailment.
    Theory outside(sig, {logic::parse_sentence(sig, "forall x:E. P(x) & Q(x)")});
    CHECK(tc.entails(outside, s(1)));
    CHECK(tc.entails(outside, s(2)));
    auto other = logic::parse_signature("entity E\nrelation P(E)\n");
    CHECK_THROWS_AS((void)tc.entails(th({1}), logic::parse_sentence(other, "exists x:E. P(x)")), SignatureMismatch);
    CHECK_THROWS_AS((void)tc.entails(Theory(other, {}), s(1)), SignatureMismatch);
}

TEST_CASE("theory_leq examples") {
    auto tc = fixtures::fix_tc();
    CHECK(tc.theory_leq(th({1}), th({3})));
    CHECK(tc.theory_leq(th({2, 4}), th({2, 4})));
    CHECK_FALSE(tc.theory_leq(th({1}), th({2})));
    CHECK_FALSE(tc.theory_leq(th({2}), th({1})));
    Theory t(fix_sig(), {logic::parse_sentence(fix_sig(), "exists x:E. Q(x)")});
    CHECK_THROWS_AS((void)tc.theory_leq(t, th({1})), ValidationError);
}

TEST_CASE("closure laws, exhaustive over pool subsets") {
    auto tc = fixtures::fix_tc();
    for (std::uint64_t a = 0; a < 16; ++a) {
        Bits ta = subset_bits(4, a);
        Bits ca = tc.closure(ta).intent();
        CHECK(ta.is_subset_of(ca));
        CHECK(tc.closure(ca).intent() == ca);
        CHECK(ca == oracle_closure(tc.models(), tc.pool(), ta));
        for (std::uint64_t b = 0; b < 16; ++b) {
            Bits tb = subset_bits(4, b);
            if (ta.is_subset_of(tb)) CHECK(ca.is_subset_of(tc.closure(tb).intent()));
        }
    }
}

TEST_CASE("entailment agrees with closure membership, and leq with entailment") {
    auto tc = fixtures::fix_tc();
    const auto& pool = tc.pool();
    auto theory = [&](std::uint64_t mask) {
        std::vector<Sentence> ax;
        for (std::size_t k = 0; k < 4; ++k)
            if ((mask >> k) & 1) ax.push_back(pool[k]);
        return Theory(fix_sig(), ax);
    };
    for (std::uint64_t a = 0; a < 16; ++a) {
        auto ta = theory(a);
        Bits ca = tc.closure(ta).intent();
        for (std::size_t k = 0; k < 4; ++k) CHECK(tc.entails(ta, pool[k]) == ca.test(k));
        for (std::uint64_t b = 0; b < 16; ++b) {
            auto tb = theory(b);
            bool all = true;
            for (const auto& phi : tb.axioms()) all = all && tc.entails(ta, phi);
            CHECK(tc.theory_leq(ta, tb) == all);
            CHECK(tc.theory_leq(ta, tb) == tc.closure(tb).intent().is_subset_of(ca));
        }
    }
}

TEST_CASE("theory lattice of the fixture") {
    auto tc = fixtures::fix_tc();
    TheoryLattice lat(tc);
    REQUIRE(lat.size() == 8);
    std::set<Bits> intents;
    for (const auto& c : lat.theories()) intents.insert(c.intent());
    std::set<Bits> expected{labels(4, {}),     labels(4, {3}),       labels(4, {4}),         labels(4, {3, 4}),
                            labels(4, {1, 3}), labels(4, {2, 4}),    labels(4, {2, 3, 4}),   labels(4, {1, 2, 3, 4})};
    CHECK(intents == expected);

    // Brute-force oracle: close every pool subset.
    std::set<Bits> oracle;
    for (std::uint64_t m = 0; m < 16; ++m) oracle.insert(oracle_closure(tc.models(), tc.pool(), subset_bits(4, m)));
    CHECK(intents == oracle);

    // Order is reverse inclusion.
    for (const auto& a : lat.theories())
        for (const auto& b : lat.theories()) CHECK(lat.leq(a, b) == b.intent().is_subset_of(a.intent()));

    auto c1234 = tc.closure(th({1, 2, 3, 4})), c13 = tc.closure(th({1})), c3 = tc.closure(th({3})),
         cnone = tc.closure(th({}));
    CHECK(lat.leq(c1234, c13));
    CHECK(lat.leq(c13, c3));
    CHECK(lat.leq(c3, cnone));
    CHECK_FALSE(lat.leq(c3, c13));

    auto d = lat.concepts().density();
    CHECK(d.join_dense);
    CHECK(d.meet_dense);
}

TEST_CASE("serial and parallel theory lattices coincide") {
    TheoryLattice a(fixtures::fix_tc(Exec::serial), {fca::default_concept_cap, Exec::serial});
    TheoryLattice b(fixtures::fix_tc(Exec::parallel), {fca::default_concept_cap, Exec::parallel});
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.theory(k).intent() == b.theory(k).intent());
    CHECK(write_text(a) == write_text(b));
}

TEST_CASE("extremes") {
    auto tc = fixtures::fix_tc();
    TheoryLattice lat(tc);
    CHECK(lat.top().intent() == labels(4, {}));
    CHECK(lat.top() == tc.closure(th({})));
    CHECK(lat.bottom().intent() == labels(4, {1, 2, 3, 4}));
    auto ext = tc.extent(lat.bottom());
    REQUIRE(ext.count() == 1);
    CHECK(tc.models()[ext.find_first()] == fixtures::model(fix_sig(), "P = {a, b}\nQ = {a, b}\n"));

    auto pool = fixtures::fix_pool();
    pool.push_back(logic::parse_sentence(fix_sig(), "exists x:E. ~(x = x)"));
    auto tc2 = TruthClassification::build(fix_sig(), fixtures::fix_models(), pool);
    TheoryLattice lat2(tc2);
    CHECK(tc2.extent(lat2.bottom()).none());
    CHECK(lat2.bottom().intent().all());
}

TEST_CASE("join and meet examples") {
    auto tc = fixtures::fix_tc();
    TheoryLattice lat(tc);
    auto c13 = tc.closure(th({1, 3})), c234 = tc.closure(th({2, 3, 4})), c24 = tc.closure(th({2, 4}));
    auto c3 = tc.closure(th({3})), c4 = tc.closure(th({4}));
    CHECK(lat.join(c13, c234).intent() == labels(4, {3}));
    for (const auto& c : lat.theories()) {
        CHECK(lat.join(c, lat.top()) == lat.top());
        CHECK(lat.meet(c, lat.top()) == c);
    }
    CHECK(lat.join(c13, c24) == lat.top());
    CHECK(lat.meet(c13, c24).intent() == labels(4, {1, 2, 3, 4}));
    CHECK(lat.meet(c3, c4).intent() == labels(4, {3, 4}));
}

TEST_CASE("join and meet agree with the concept lattice") {
    auto tc = fixtures::fix_tc6();
    TheoryLattice lat(tc);
    const auto& cl = lat.concepts();
    for (std::size_t a = 0; a < lat.size(); ++a)
        for (std::size_t b = 0; b < lat.size(); ++b) {
            std::size_t pair[2] = {a, b};
            CHECK(lat.join(lat.theory(a), lat.theory(b)).intent() == cl.concept_at(cl.join(pair)).intent);
            CHECK(lat.meet(lat.theory(a), lat.theory(b)).intent() == cl.concept_at(cl.meet(pair)).intent);
            // meet is the pool theory of the common models
            Bits common = tc.extent(lat.theory(a)) & tc.extent(lat.theory(b));
            CHECK(lat.meet(lat.theory(a), lat.theory(b)).intent() == tc.theory_of_models(common));
        }
}

TEST_CASE("foreign theories are rejected") {
    auto tc = fixtures::fix_tc();
    TheoryLattice lat(tc);
    auto other = fixtures::fix_tc();  // same data, different identity
    TheoryLattice lat2(other);
    CHECK_THROWS_AS((void)lat.join(lat2.top(), lat.top()), ForeignElement);
    CHECK_THROWS_AS((void)lat.meet(lat.top(), lat2.bottom()), ForeignElement);
    ClosedTheory unclosed(tc.id(), labels(4, {1}));
    CHECK_THROWS_AS((void)lat.join(unclosed, lat.top()), ForeignElement);
    CHECK_THROWS_AS((void)tc.check_owned(unclosed), ForeignElement);
}

TEST_CASE("generator concepts") {
    auto tc = fixtures::fix_tc();
    auto m = fixtures::model(fix_sig(), "P = {a, b}\nQ = {}\n");
    auto idx = tc.find_model(m);
    REQUIRE(idx.has_value());
    CHECK(tc.object_concept(*idx).intent() == labels(4, {1, 3}));
    CHECK(tc.attribute_concept(s(2)).intent() == labels(4, {2, 4}));
    CHECK(tc.attribute_concept(s(3)).intent() == labels(4, {3}));
    CHECK_THROWS_AS((void)tc.object_concept(16), ForeignElement);
    CHECK_THROWS_AS((void)tc.attribute_concept(logic::parse_sentence(fix_sig(), "exists x:E. Q(x)")), ForeignElement);
    for (std::size_t i = 0; i < tc.models().size(); ++i) {
        std::vector<Sentence> th_m = logic::theory_of(tc.models()[i], tc.pool());
        CHECK(tc.sentences(tc.object_concept(i)) == th_m);
    }
}

TEST_CASE("the swap-closed pool has the brute-force lattice") {
    auto tc = fixtures::fix_tc6();
    TheoryLattice lat(tc);
    std::set<Bits> oracle;
    for (std::uint64_t m = 0; m < 64; ++m) oracle.insert(oracle_closure(tc.models(), tc.pool(), subset_bits(6, m)));
    CHECK(lat.size() == oracle.size());
    CHECK(lat.size() == 17);
}

TEST_CASE("text export") {
    TheoryLattice lat(fixtures::fix_tc());
    auto text = write_text(lat);
    CHECK(text.rfind("theory 0\n", 0) == 0);
    CHECK(text.find("theory 7\nmodels 0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15\nup\ndown") != std::string::npos);
    CHECK(text.find("sentence exists x:E. ~(x = x)") == std::string::npos);
    CHECK(write_text(lat) == write_text(TheoryLattice(fixtures::fix_tc())));
    auto dot = write_dot(lat);
    CHECK(dot.find("lattice_of_theories") != std::string::npos);
    auto cxt = fca::read_cxt(write_cxt(lat));
    CHECK(cxt.ctx == lat.classification().classification());
    CHECK(write_theory(lat.classification(), lat.bottom()) ==
          "exists x:E. P(x)\nforall x:E. P(x)\nforall x:E. P(x) -> Q(x)\nforall x:E. Q(x)\n");
}
