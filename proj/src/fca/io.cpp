#include "lot/fca/io.hpp"

#include "lot/error.hpp"
#include "text_util.hpp"

#include <charconv>
#include <optional>
#include <sstream>

namespace lot::fca {

namespace {

std::optional<std::size_t> as_count(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

}  // namespace

NamedContext read_cxt(std::string_view text) {
    auto lines = numbered_lines(text);
    std::size_t pos = 0;
    auto line_no = [&] { return pos < lines.size() ? lines[pos].first : lines.size() + 1; };
    auto at = [&](std::size_t k) -> std::optional<std::string_view> {
        if (k < lines.size()) return lines[k].second;
        return std::nullopt;
    };

    if (!at(0) || trim(*at(0)) != "B") throw ParseError(1, "expected 'B' on the first line");
    pos = 1;
    NamedContext out;
    // The name line is optional; without it the counts start on line 2.
    bool counts_next = at(1) && at(2) && as_count(*at(1)) && as_count(*at(2)) && !(at(3) && as_count(*at(3)));
    if (!counts_next) {
        if (!at(1)) throw ParseError(2, "missing object count");
        out.name = std::string(*at(1));
        pos = 2;
    }
    auto n = at(pos) ? as_count(*at(pos)) : std::nullopt;
    if (!n) throw ParseError(line_no(), "expected the number of objects");
    ++pos;
    auto m = at(pos) ? as_count(*at(pos)) : std::nullopt;
    if (!m) throw ParseError(line_no(), "expected the number of attributes");
    ++pos;
    while (pos < lines.size() && trim(lines[pos].second).empty()) ++pos;

    std::vector<std::string> objects, attributes;
    for (std::size_t k = 0; k < *n + *m; ++k, ++pos) {
        if (pos >= lines.size()) throw ParseError(line_no(), "missing object or attribute name");
        auto name = std::string(lines[pos].second);
        (k < *n ? objects : attributes).push_back(std::move(name));
    }
    std::vector<Bits> rows;
    for (std::size_t i = 0; i < *n; ++i, ++pos) {
        if (pos >= lines.size()) throw ParseError(line_no(), "missing incidence row");
        auto row = trim(lines[pos].second);
        if (row.size() != *m)
            throw ParseError(line_no(), "incidence row has " + std::to_string(row.size()) + " cells, expected " +
                                            std::to_string(*m));
        Bits bits(*m);
        for (std::size_t t = 0; t < *m; ++t) {
            char c = row[t];
            if (c == 'X' || c == 'x')
                bits.set(t);
            else if (c != '.')
                throw ParseError(line_no(), std::string("unexpected cell '") + c + "'");
        }
        rows.push_back(std::move(bits));
    }
    for (; pos < lines.size(); ++pos)
        if (!trim(lines[pos].second).empty()) throw ParseError(line_no(), "trailing content after the incidence rows");
    try {
        out.ctx = Classification::from_rows(std::move(objects), std::move(attributes), std::move(rows));
    } catch (const ValidationError& e) {
        throw ParseError(0, e.what());
    }
    return out;
}

std::string write_cxt(const Classification& ctx, std::string_view name) {
    std::ostringstream out;
    out << "B\n" << name << '\n' << ctx.instance_count() << '\n' << ctx.type_count() << "\n\n";
    for (const auto& o : ctx.instances()) out << o << '\n';
    for (const auto& a : ctx.types()) out << a << '\n';
    for (std::size_t i = 0; i < ctx.instance_count(); ++i) {
        for (std::size_t t = 0; t < ctx.type_count(); ++t) out << (ctx.incident(i, t) ? 'X' : '.');
        out << '\n';
    }
    return out.str();
}

std::string write_dot(const ConceptLattice& lat, std::string_view graph_name) {
    const auto& ctx = lat.context();
    std::vector<std::vector<std::string>> own_types(lat.size()), own_instances(lat.size());
    for (std::size_t t = 0; t < ctx.type_count(); ++t) own_types[lat.type_concept(t)].push_back(ctx.types()[t]);
    for (std::size_t i = 0; i < ctx.instance_count(); ++i)
        own_instances[lat.instance_concept(i)].push_back(ctx.instances()[i]);

    std::ostringstream out;
    out << "digraph \"" << dot_escape(graph_name) << "\" {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=box];\n";
    for (std::size_t c = 0; c < lat.size(); ++c) {
        std::string label;
        if (!own_types[c].empty()) label += "types: " + join_names(own_types[c]);
        if (!own_instances[c].empty()) {
            if (!label.empty()) label += "\n";
            label += "instances: " + join_names(own_instances[c]);
        }
        std::string escaped = dot_escape(label);
        std::string with_breaks;
        for (char ch : escaped) with_breaks += ch == '\n' ? std::string("\\n") : std::string(1, ch);
        out << "  c" << c << " [label=\"" << with_breaks << "\"];\n";
    }
    auto covers = lat.upper_covers();
    for (std::size_t c = 0; c < covers.size(); ++c)
        for (auto up : covers[c]) out << "  c" << c << " -> c" << up << ";\n";
    out << "}\n";
    return out.str();
}

std::string write_concepts(const ConceptLattice& lat) {
    const auto& ctx = lat.context();
    std::ostringstream out;
    for (std::size_t c = 0; c < lat.size(); ++c) {
        const auto& fc = lat.concept_at(c);
        out << c << "\t{" << join_names(ctx.instance_names(fc.extent)) << "}\t{"
            << join_names(ctx.type_names(fc.intent)) << "}\n";
    }
    return out.str();
}

}  // namespace lot::fca
