#pragma once

#include "lot/fca/classification.hpp"
#include "lot/fca/lattice.hpp"

#include <string>
#include <string_view>

namespace lot::fca {

struct NamedContext {
    std::string name;
    Classification ctx;
};

/// Burmeister .cxt: `B`, an optional name line, object and attribute counts, a blank
/// line, object names, attribute names, then one row of `X`/`.` per object.
/// Throws ParseError with the line number.
NamedContext read_cxt(std::string_view text);

/// Writes the layout read_cxt accepts: `B`, the name line (possibly empty), the two
/// counts, one blank line, names and rows, every line '\n'-terminated.
std::string write_cxt(const Classification& ctx, std::string_view name = {});

/// Hasse diagram in DOT. Edges run from a concept to its upper covers; labels use the
/// reduced labeling (types at their τ concept, instances at their ι concept).
std::string write_dot(const ConceptLattice& lat, std::string_view graph_name = "concept_lattice");

/// One line per concept: `<index>\t{extent}\t{intent}` in canonical order.
std::string write_concepts(const ConceptLattice& lat);

}  // namespace lot::fca
