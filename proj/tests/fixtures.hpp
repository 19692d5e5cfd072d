#pragma once

// Shared test fixtures.

#include "lot/fca/classification.hpp"
#include "lot/logic/formula.hpp"
#include "lot/logic/signature.hpp"
#include "lot/logic/structure.hpp"
#include "lot/morph/morphism.hpp"
#include "lot/truth/truth.hpp"

#include <string>
#include <vector>

namespace fixtures {

using namespace lot;

inline const char* fix_sig_text = "entity E\nrelation P(E)\nrelation Q(E)\n";

inline logic::SignaturePtr fix_sig() {
    static auto sig = logic::parse_signature(fix_sig_text);
    return sig;
}

inline const std::vector<std::string>& fix_pool_text() {
    static const std::vector<std::string> pool{
        "forall x:E. P(x)",         // s1
        "forall x:E. Q(x)",         // s2
        "exists x:E. P(x)",         // s3
        "forall x:E. P(x) -> Q(x)"  // s4
    };
    return pool;
}

inline std::vector<logic::Sentence> sentences(const logic::SignaturePtr& sig, const std::vector<std::string>& text) {
    std::vector<logic::Sentence> out;
    for (const auto& t : text) out.push_back(logic::parse_sentence(sig, t));
    return out;
}

inline std::vector<logic::Sentence> fix_pool() { return sentences(fix_sig(), fix_pool_text()); }

inline logic::Sentence s(int i) { return fix_pool().at(static_cast<std::size_t>(i - 1)); }

inline logic::CarrierAssignment carriers_ab(const logic::Signature& sig) {
    return logic::CarrierAssignment(sig, {{"E", {"a", "b"}}});
}

inline std::vector<logic::Structure> fix_models() {
    return logic::enumerate_structures(fix_sig(), carriers_ab(*fix_sig()));
}

/// A single structure over E={a,b} from a model-file snippet.
inline logic::Structure model(const logic::SignaturePtr& sig, const std::string& body) {
    return logic::parse_models(sig, "universe E = {a, b}\n" + body).at(0);
}

inline truth::TruthClassification fix_tc(Exec exec = Exec::parallel) {
    return truth::TruthClassification::build(fix_sig(), fix_models(), fix_pool(), {logic::default_model_cap, exec});
}

/// FIX-TC6: the swap-closed pool.
inline std::vector<logic::Sentence> fix_pool6() {
    return sentences(fix_sig(), {"forall x:E. P(x)", "forall x:E. Q(x)", "exists x:E. P(x)", "exists x:E. Q(x)",
                                 "forall x:E. P(x) -> Q(x)", "forall x:E. Q(x) -> P(x)"});
}

inline truth::TruthClassification fix_tc6() {
    return truth::TruthClassification::build(fix_sig(), fix_models(), fix_pool6());
}

inline morph::LanguageMorphism sigma() {
    return morph::LanguageMorphism::from_names(fix_sig(), fix_sig(), {{"E", "E"}}, {{"P", "Q"}, {"Q", "P"}}, {});
}

/// FIX-CTX: instances {1,2,3}, types {a,b,c}; 1⊨a, 1⊨b, 2⊨b, 2⊨c, 3⊨c.
inline fca::Classification fix_ctx() {
    return fca::Classification({"1", "2", "3"}, {"a", "b", "c"},
                               {{"1", "a"}, {"1", "b"}, {"2", "b"}, {"2", "c"}, {"3", "c"}});
}

// FIX-INT: L1 = (E; R(E)), h: R ↦ P(x1) & Q(x1).
inline logic::SignaturePtr int_sig() {
    static auto sig = logic::parse_signature("entity E\nrelation R(E)\n");
    return sig;
}

inline morph::Interpretation fix_h() {
    return morph::Interpretation::from_names(int_sig(), fix_sig(), {{"E", "E"}}, {}, {{"R", "P(x1) & Q(x1)"}});
}

inline std::vector<logic::Sentence> int_pool1() {
    return sentences(int_sig(), {"forall x:E. R(x)", "exists x:E. R(x)"});
}

inline std::vector<logic::Sentence> int_pool2() {
    auto pool = fix_pool();
    for (const auto& t : {"forall x:E. P(x) & Q(x)", "exists x:E. P(x) & Q(x)"})
        pool.push_back(logic::parse_sentence(fix_sig(), t));
    return pool;
}

inline truth::TruthClassification int_tc1() {
    return truth::TruthClassification::build(int_sig(), carriers_ab(*int_sig()), int_pool1());
}

inline truth::TruthClassification int_tc2() {
    return truth::TruthClassification::build(fix_sig(), fix_models(), int_pool2());
}

inline fca::Bits bits(std::size_t width, std::initializer_list<std::size_t> members) {
    fca::Bits b(width);
    for (auto m : members) b.set(m);
    return b;
}

/// Pool-subset bits from 1-based labels.
inline fca::Bits labels(std::size_t width, std::initializer_list<std::size_t> ones) {
    fca::Bits b(width);
    for (auto m : ones) b.set(m - 1);
    return b;
}

}  // namespace fixtures
