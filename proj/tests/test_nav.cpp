#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "lot/error.hpp"
#include "lot/nav/nav.hpp"

#include <map>
#include <set>

using namespace lot;
using namespace lot::nav;
using fixtures::fix_sig;
using fixtures::labels;
using fixtures::s;
using Sentences = std::vector<Sentence>;
using fca::Bits;

namespace {

Sentences ss(std::initializer_list<int> ids) {
    Sentences out;
    for (int i : ids) out.push_back(s(i));
    return out;
}

ClosedTheory clo(const TheoryLattice& lat, std::initializer_list<int> ids) {
    return lat.closure(truth::Theory(fix_sig(), ss(ids)));
}

Sentences pool6(std::initializer_list<int> ids) {
    auto pool = fixtures::fix_pool6();
    Sentences out;
    for (int i : ids) out.push_back(pool.at(static_cast<std::size_t>(i - 1)));
    return out;
}

Sentences subset_sentences(const truth::TruthClassification& tc, const Bits& b) { return tc.sentences(b); }

// Swap P and Q textually and close by direct evaluation over all models.
Bits swapped_closure_oracle(const truth::TruthClassification& tc, const Sentences& axioms) {
    Sentences translated;
    for (const auto& a : axioms) {
        std::string t = a.key();
        for (auto& ch : t) ch = ch == 'P' ? 'Q' : ch == 'Q' ? 'P' : ch;
        translated.push_back(logic::parse_sentence(fix_sig(), t));
    }
    Bits out(tc.pool().size());
    out.set();
    for (const auto& m : tc.models()) {
        bool ok = true;
        for (const auto& t : translated) ok = ok && logic::satisfies(m, t);
        if (!ok) continue;
        for (std::size_t k = 0; k < tc.pool().size(); ++k)
            if (!logic::satisfies(m, tc.pool()[k])) out.reset(k);
    }
    return out;
}

}  // namespace

TEST_CASE("contract examples") {
    TheoryLattice lat(fixtures::fix_tc());
    CHECK(contract(lat, clo(lat, {1, 2, 3, 4}), ss({1})).intent() == labels(4, {2, 3, 4}));
    for (const auto& c : lat.theories()) CHECK(contract(lat, c, Sentences{}) == c);
    CHECK(contract(lat, clo(lat, {1, 3}), ss({1})).intent() == labels(4, {3}));
    // Deleting a derivable axiom can leave it in place.
    CHECK(contract(lat, clo(lat, {2, 3, 4}), ss({4})).intent() == labels(4, {2, 3, 4}));
}

TEST_CASE("expand examples") {
    TheoryLattice lat(fixtures::fix_tc());
    CHECK(expand(lat, lat.top(), ss({1})).intent() == labels(4, {1, 3}));
    for (const auto& c : lat.theories()) CHECK(expand(lat, c, Sentences{}) == c);
    CHECK(expand(lat, clo(lat, {3}), ss({4})).intent() == labels(4, {3, 4}));
}

TEST_CASE("revise examples") {
    TheoryLattice lat(fixtures::fix_tc());
    CHECK(revise(lat, clo(lat, {1, 3}), ss({1}), ss({2})).intent() == labels(4, {2, 3, 4}));
    for (const auto& c : lat.theories()) CHECK(revise(lat, c, Sentences{}, Sentences{}) == c);
    CHECK(revise(lat, clo(lat, {1, 2, 3, 4}), ss({1}), ss({1})).intent() == labels(4, {1, 2, 3, 4}));
}

TEST_CASE("navigation errors") {
    TheoryLattice lat(fixtures::fix_tc());
    TheoryLattice other(fixtures::fix_tc());
    Sentences outside{logic::parse_sentence(fix_sig(), "exists x:E. Q(x)")};
    CHECK_THROWS_AS((void)contract(lat, other.top(), ss({1})), ForeignElement);
    CHECK_THROWS_AS((void)expand(lat, other.top(), ss({1})), ForeignElement);
    CHECK_THROWS_AS((void)contract(lat, lat.top(), outside), ValidationError);
    CHECK_THROWS_WITH_AS((void)expand(lat, lat.top(), outside), doctest::Contains("pool"), ValidationError);
    CHECK_THROWS_AS((void)revise(lat, lat.top(), Sentences{}, outside), ValidationError);
    CHECK_THROWS_AS((void)revise(lat, lat.top(), outside, Sentences{}), ValidationError);
    // revise validates the additions before doing anything
    CHECK_THROWS_AS((void)revise(lat, other.top(), ss({1}), ss({2})), ForeignElement);
}

TEST_CASE("round trip: expand(contract(C, A), A) = C") {
    TheoryLattice lat(fixtures::fix_tc());
    const auto& tc = lat.classification();
    for (const auto& c : lat.theories()) {
        auto members = c.intent();
        std::vector<std::size_t> idx;
        for (auto k = members.find_first(); k != Bits::npos; k = members.find_next(k)) idx.push_back(k);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << idx.size()); ++mask) {
            Bits a(4);
            for (std::size_t j = 0; j < idx.size(); ++j)
                if ((mask >> j) & 1) a.set(idx[j]);
            auto axioms = subset_sentences(tc, a);
            CHECK(expand(lat, contract(lat, c, axioms), axioms) == c);
        }
    }
}

TEST_CASE("move directions and reachability, exhaustive") {
    TheoryLattice lat(fixtures::fix_tc());
    const auto& tc = lat.classification();
    for (const auto& c : lat.theories()) {
        for (std::uint64_t mask = 0; mask < 16; ++mask) {
            Bits a(4);
            for (std::size_t k = 0; k < 4; ++k)
                if ((mask >> k) & 1) a.set(k);
            auto axioms = subset_sentences(tc, a);
            auto down = contract(lat, c, axioms);
            auto up = expand(lat, c, axioms);
            CHECK(down.intent().is_subset_of(c.intent()));
            CHECK(lat.leq(c, down));
            CHECK(c.intent().is_subset_of(up.intent()));
            CHECK(lat.leq(up, c));
        }
        CHECK(contract(lat, c, tc.sentences(c)) == lat.top());
        CHECK(lat.top() == lat.closure(truth::Theory(fix_sig(), {})));
        for (const auto& target : lat.theories()) {
            auto via_top = expand(lat, contract(lat, c, tc.sentences(c)), tc.sentences(target));
            CHECK(via_top == target);
        }
    }
}

TEST_CASE("analogy on the swap-closed pool") {
    auto tc = fixtures::fix_tc6();
    TheoryLattice lat(tc);
    auto sigma = fixtures::sigma();
    auto c = lat.closure(truth::Theory(fix_sig(), pool6({1})));
    CHECK(c.intent() == labels(6, {1, 3, 6}));  // forall P also gives exists P and Q -> P
    auto image = analogy(sigma, lat, lat, c);
    CHECK(image == lat.closure(truth::Theory(fix_sig(), pool6({2}))));
    CHECK(image.intent() == labels(6, {2, 4, 5}));
    CHECK(image.intent() == swapped_closure_oracle(tc, tc.sentences(c)));

    auto id = morph::LanguageMorphism::identity(fix_sig());
    for (const auto& t : lat.theories()) CHECK(analogy(id, lat, lat, t) == t);
    CHECK(analogy(sigma, lat, lat, lat.top()) == lat.top());
}

TEST_CASE("analogy is a lattice isomorphism under the swap") {
    auto tc = fixtures::fix_tc6();
    TheoryLattice lat(tc);
    auto sigma = fixtures::sigma();
    std::map<std::size_t, std::size_t> image;
    std::set<std::size_t> hit;
    for (std::size_t k = 0; k < lat.size(); ++k) {
        auto im = analogy(sigma, lat, lat, lat.theory(k));
        image[k] = lat.id_of(im);
        hit.insert(image[k]);
        CHECK(im.intent() == swapped_closure_oracle(tc, tc.sentences(lat.theory(k))));
    }
    CHECK(hit.size() == lat.size());
    for (std::size_t a = 0; a < lat.size(); ++a)
        for (std::size_t b = 0; b < lat.size(); ++b)
            CHECK(lat.leq(lat.theory(a), lat.theory(b)) == lat.leq(lat.theory(image[a]), lat.theory(image[b])));
}

TEST_CASE("analogy errors") {
    TheoryLattice lat(fixtures::fix_tc());  // pool is not swap-closed
    auto sigma = fixtures::sigma();
    auto c = clo(lat, {1});
    CHECK_THROWS_WITH_AS((void)analogy(sigma, lat, lat, c), doctest::Contains("exists x:E. Q(x)"), ValidationError);
    TheoryLattice int_lat(fixtures::int_tc1());
    CHECK_THROWS_AS((void)analogy(sigma, int_lat, lat, int_lat.top()), SignatureMismatch);
    CHECK_THROWS_AS((void)analogy(sigma, lat, int_lat, lat.top()), SignatureMismatch);
}

TEST_CASE("navigator keeps an audit log") {
    TheoryLattice lat(fixtures::fix_tc());
    Navigator nav(lat, lat.top());
    nav.expand(ss({1}));
    nav.expand(ss({2}));
    nav.contract(ss({1}));
    nav.revise(ss({2}), ss({1}));
    REQUIRE(nav.log().size() == 4);
    CHECK(nav.current().intent() == labels(4, {1, 2, 3, 4}));  // s1 with s4 forces s2
    CHECK(nav.log()[0].kind == StepKind::expand);
    CHECK(nav.log()[0].source == lat.id_of(lat.top()));
    for (std::size_t k = 1; k < nav.log().size(); ++k) CHECK(nav.log()[k].source == nav.log()[k - 1].result);
    CHECK(nav.log()[3].removed == ss({2}));
    CHECK(std::string(to_string(StepKind::revise)) == "revise");

    TheoryLattice lat6(fixtures::fix_tc6());
    Navigator nav6(lat6, lat6.closure(truth::Theory(fix_sig(), pool6({1}))));
    nav6.analogy(fixtures::sigma());
    CHECK(nav6.current().intent() == labels(6, {2, 4, 5}));
    CHECK(nav6.log().back().morphism.has_value());
    auto int_to_fix = morph::LanguageMorphism::from_names(fixtures::int_sig(), fix_sig(), {{"E", "E"}}, {{"R", "P"}}, {});
    CHECK_THROWS_AS(nav6.analogy(int_to_fix), SignatureMismatch);
}

TEST_CASE("navigation scripts") {
    auto steps = parse_script("# tour\ncontract s1,s2\n\nexpand s4\nrevise s1 / s2, s3\nrevise / s1\nanalogy maps/swap.map\n", 4);
    REQUIRE(steps.size() == 5);
    CHECK(steps[0].line == 2);
    CHECK(steps[0].kind == StepKind::contract);
    CHECK(steps[0].removed == std::vector<std::size_t>{0, 1});
    CHECK(steps[1].added == std::vector<std::size_t>{3});
    CHECK(steps[2].removed == std::vector<std::size_t>{0});
    CHECK(steps[2].added == std::vector<std::size_t>{1, 2});
    CHECK(steps[3].removed.empty());
    CHECK(steps[4].kind == StepKind::analogy);
    CHECK(steps[4].morphism_path == "maps/swap.map");

    for (const char* bad : {"contract s5\n", "expand x1\n", "jump s1\n", "revise s1\n", "analogy\n", "expand s0\n"}) {
        CHECK_THROWS_AS((void)parse_script(bad, 4), ParseError);
    }
    try {
        (void)parse_script("expand s1\ncontract q\n", 4);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}
