#include "lot/fca/kernels.hpp"

#include "lot/error.hpp"

#include <atomic>
#include <exception>
#include <limits>

#include <omp.h>

namespace lot::fca {

namespace {

[[noreturn]] void refuse(std::size_t cap) {
    throw CapExceeded("concept count exceeds the cap " + std::to_string(cap), cap + 1);
}

// True iff a and b agree on every position below `limit`.
bool same_prefix(const Bits& a, const Bits& b, std::size_t limit) {
    for (std::size_t k = 0; k < limit; ++k)
        if (a.test(k) != b.test(k)) return false;
    return true;
}

struct CbO {
    const Classification& ctx;
    std::size_t cap;
    std::atomic<std::size_t>& produced;
    std::atomic<bool>& overflow;

    void run(const Bits& extent, const Bits& intent, std::size_t from, std::vector<Bits>& out) const {
        if (overflow.load(std::memory_order_relaxed)) return;
        if (produced.fetch_add(1, std::memory_order_relaxed) >= cap) {
            overflow = true;
            return;
        }
        out.push_back(intent);
        for (std::size_t j = from; j < ctx.type_count(); ++j) {
            if (intent.test(j)) continue;
            Bits child_extent = extent & ctx.column(j);
            Bits child_intent = ctx.derive_types(child_extent);
            if (same_prefix(child_intent, intent, j)) run(child_extent, child_intent, j + 1, out);
        }
    }
};

}  // namespace

std::vector<Bits> intents_next_closure(const Classification& ctx, std::size_t cap) {
    const std::size_t m = ctx.type_count();
    auto close = [&](const Bits& y) { return ctx.derive_types(ctx.derive_instances(y)); };
    std::vector<Bits> out;
    Bits current = close(Bits(m));
    for (;;) {
        if (out.size() >= cap) refuse(cap);
        out.push_back(current);
        if (current.all()) break;
        bool advanced = false;
        for (std::size_t i = m; i-- > 0;) {
            if (current.test(i)) {
                current.reset(i);
                continue;
            }
            Bits candidate = current;
            candidate.set(i);
            Bits closed = close(candidate);
            // Lectic successor: closing must not add anything below i.
            if (same_prefix(closed, current, i)) {
                current = std::move(closed);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

std::vector<Bits> intents_close_by_one(const Classification& ctx, std::size_t cap) {
    const std::size_t m = ctx.type_count();
    std::atomic<std::size_t> produced{1};
    std::atomic<bool> overflow{false};
    if (cap == 0) refuse(cap);
    CbO cbo{ctx, cap, produced, overflow};

    Bits top_extent(ctx.instance_count());
    top_extent.set();
    const Bits top_intent = ctx.derive_types(top_extent);

    std::vector<std::vector<Bits>> branches(m);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t sj = 0; sj < static_cast<std::ptrdiff_t>(m); ++sj) {
        auto j = static_cast<std::size_t>(sj);
        if (top_intent.test(j)) continue;
        Bits child_extent = top_extent & ctx.column(j);
        Bits child_intent = ctx.derive_types(child_extent);
        if (same_prefix(child_intent, top_intent, j)) cbo.run(child_extent, child_intent, j + 1, branches[j]);
    }
    if (overflow) refuse(cap);

    std::vector<Bits> out{top_intent};
    for (auto& b : branches)
        for (auto& intent : b) out.push_back(std::move(intent));
    return out;
}

std::optional<std::size_t> find_first(std::size_t n, const std::function<bool(std::size_t)>& fails, Exec exec) {
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i)
            if (fails(i)) return i;
        return std::nullopt;
    }
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
        auto i = static_cast<std::size_t>(si);
        if (i >= best.load(std::memory_order_relaxed)) continue;
        bool failed = false;
        try {
            failed = fails(i);
        } catch (...) {
#pragma omp critical(lot_find_first_error)
            if (!error) error = std::current_exception();
            failed = true;
        }
        if (failed) {
            auto cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    }
    if (error) std::rethrow_exception(error);
    auto b = best.load();
    if (b == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return b;
}

}  // namespace lot::fca
