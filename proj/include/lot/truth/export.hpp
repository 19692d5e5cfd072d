#pragma once

#include "lot/truth/truth.hpp"

#include <string>

namespace lot::truth {

/// Line-oriented export, one block per closed theory in id order:
///
///     theory 3
///     sentence exists x:E. P(x)        (one line per sentence, sorted)
///     models 2 3 6 7                   (extent as model indices)
///     up 5                             (upper covers: more general theories)
///     down 0 1                         (lower covers)
///
/// Blocks are separated by a blank line.
std::string write_text(const TheoryLattice& lat);

/// Hasse diagram with sentence keys as type labels and model indices as instance labels.
std::string write_dot(const TheoryLattice& lat);

/// The truth classification as a Burmeister context (models × pool).
std::string write_cxt(const TheoryLattice& lat);

/// Sorted sentence keys of a closed theory, one per line.
std::string write_theory(const TruthClassification& tc, const ClosedTheory& c);

}  // namespace lot::truth
