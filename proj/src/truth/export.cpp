#include "lot/truth/export.hpp"

#include "lot/fca/io.hpp"

#include <algorithm>
#include <sstream>

namespace lot::truth {

namespace {

std::vector<std::string> sorted_keys(const TruthClassification& tc, const Bits& intent) {
    std::vector<std::string> keys;
    for (const auto& s : tc.sentences(intent)) keys.push_back(s.key());
    std::sort(keys.begin(), keys.end());
    return keys;
}

void write_ids(std::ostream& out, const char* tag, const std::vector<std::size_t>& ids) {
    out << tag;
    for (auto i : ids) out << ' ' << i;
    out << '\n';
}

}  // namespace

std::string write_text(const TheoryLattice& lat) {
    const auto& tc = lat.classification();
    auto up = lat.concepts().upper_covers();
    std::vector<std::vector<std::size_t>> down(up.size());
    for (std::size_t c = 0; c < up.size(); ++c)
        for (auto u : up[c]) down[u].push_back(c);

    std::ostringstream out;
    for (std::size_t id = 0; id < lat.size(); ++id) {
        if (id) out << '\n';
        const auto& concept_ = lat.concepts().concept_at(id);
        out << "theory " << id << '\n';
        for (const auto& key : sorted_keys(tc, concept_.intent)) out << "sentence " << key << '\n';
        write_ids(out, "models", fca::members(concept_.extent));
        write_ids(out, "up", up[id]);
        write_ids(out, "down", down[id]);
    }
    return out.str();
}

std::string write_dot(const TheoryLattice& lat) { return fca::write_dot(lat.concepts(), "lattice_of_theories"); }

std::string write_cxt(const TheoryLattice& lat) {
    return fca::write_cxt(lat.classification().classification(), "truth classification");
}

std::string write_theory(const TruthClassification& tc, const ClosedTheory& c) {
    std::string out;
    for (const auto& key : sorted_keys(tc, c.intent())) out += key + '\n';
    return out;
}

}  // namespace lot::truth
