#pragma once

// Test-only reference computations, deliberately independent of the library's kernels.

#include "lot/fca/classification.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracles {

using lot::fca::Bits;
using lot::fca::Classification;

/// Plain nested-loop derivation on a dense incidence matrix.
struct Dense {
    std::size_t n, m;
    std::vector<std::vector<bool>> inc;

    explicit Dense(const Classification& ctx) : n(ctx.instance_count()), m(ctx.type_count()) {
        inc.assign(n, std::vector<bool>(m, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < m; ++t) inc[i][t] = ctx.incident(i, t);
    }

    std::vector<bool> prime_types(const std::vector<bool>& x) const {
        std::vector<bool> y(m, true);
        for (std::size_t i = 0; i < n; ++i)
            if (x[i])
                for (std::size_t t = 0; t < m; ++t) y[t] = y[t] && inc[i][t];
        return y;
    }

    std::vector<bool> prime_instances(const std::vector<bool>& y) const {
        std::vector<bool> x(n, true);
        for (std::size_t t = 0; t < m; ++t)
            if (y[t])
                for (std::size_t i = 0; i < n; ++i) x[i] = x[i] && inc[i][t];
        return x;
    }
};

inline std::vector<bool> subset_of(std::uint64_t mask, std::size_t width) {
    std::vector<bool> v(width);
    for (std::size_t k = 0; k < width; ++k) v[k] = (mask >> k) & 1;
    return v;
}

inline Bits to_bits(const std::vector<bool>& v) {
    Bits b(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k]) b.set(k);
    return b;
}

/// All (extent, intent) pairs obtained by closing every type subset, deduplicated.
inline std::set<std::pair<Bits, Bits>> brute_force_concepts(const Classification& ctx) {
    Dense d(ctx);
    std::set<std::pair<Bits, Bits>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d.m); ++mask) {
        auto extent = d.prime_instances(subset_of(mask, d.m));
        auto intent = d.prime_types(extent);
        out.emplace(to_bits(extent), to_bits(intent));
    }
    return out;
}

inline Classification random_context(std::mt19937& rng, std::size_t max_n = 4, std::size_t max_m = 4) {
    std::uniform_int_distribution<std::size_t> dn(0, max_n), dm(0, max_m);
    std::bernoulli_distribution cross(0.45);
    std::size_t n = dn(rng), m = dm(rng);
    std::vector<std::string> inst, typ;
    for (std::size_t i = 0; i < n; ++i) inst.push_back("g" + std::to_string(i));
    for (std::size_t t = 0; t < m; ++t) typ.push_back("m" + std::to_string(t));
    std::vector<Bits> rows(n, Bits(m));
    for (auto& r : rows)
        for (std::size_t t = 0; t < m; ++t)
            if (cross(rng)) r.set(t);
    return Classification::from_rows(inst, typ, rows);
}

/// A fixed corpus: every context the tests call "the context corpus".
inline std::vector<Classification> context_corpus(std::size_t count = 120, unsigned seed = 20240611) {
    std::mt19937 rng(seed);
    std::vector<Classification> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(random_context(rng));
    return out;
}

}  // namespace oracles
