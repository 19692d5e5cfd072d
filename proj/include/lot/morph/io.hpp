#pragma once

#include "lot/morph/morphism.hpp"

#include <string>
#include <string_view>

namespace lot::morph {

/// Morphism file: `entity E -> E2`, `relation P -> Q`, `constant c -> d`, `#` comments.
/// Throws ParseError with the line number.
LanguageMorphism parse_morphism(const SignaturePtr& src, const SignaturePtr& dst, std::string_view text);

/// Interpretation file: `entity E -> E2`, `constant c -> d`,
/// `relation R(x1,...,xn) -> FORMULA` where FORMULA may use the head variables free.
Interpretation parse_interpretation(const SignaturePtr& src, const SignaturePtr& dst, std::string_view text);

std::string print_morphism(const LanguageMorphism& f);
std::string print_interpretation(const Interpretation& h);

}  // namespace lot::morph
