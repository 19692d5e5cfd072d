// Serial reference kernels against their OpenMP counterparts.

#include "lot/fca/kernels.hpp"
#include "lot/logic/formula.hpp"
#include "lot/logic/structure.hpp"
#include "lot/truth/truth.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

using namespace lot;

namespace {

fca::Classification random_context(std::size_t n, std::size_t m, double density, unsigned seed) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution coin(density);
    std::vector<std::string> inst, types;
    std::vector<fca::Bits> rows(n, fca::Bits(m));
    for (std::size_t i = 0; i < n; ++i) inst.push_back("g" + std::to_string(i));
    for (std::size_t t = 0; t < m; ++t) types.push_back("m" + std::to_string(t));
    for (auto& row : rows)
        for (std::size_t t = 0; t < m; ++t)
            if (coin(rng)) row.set(t);
    return fca::Classification::from_rows(std::move(inst), std::move(types), std::move(rows));
}

void concepts(benchmark::State& state, Exec exec) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto ctx = random_context(n, 24, 0.35, 7);
    std::size_t count = 0;
    for (auto _ : state) {
        auto intents = fca::enumerate_intents(ctx, exec, 1'000'000);
        count = intents.size();
        benchmark::DoNotOptimize(intents);
    }
    state.counters["concepts"] = static_cast<double>(count);
}

void incidence(benchmark::State& state, Exec exec) {
    auto sig = logic::parse_signature("entity E\nrelation P(E)\nrelation Q(E)\nrelation R(E,E)\n");
    auto carriers = logic::CarrierAssignment(*sig, {{"E", {"a", "b", "c"}}});
    auto models = logic::enumerate_structures(sig, carriers);
    std::vector<logic::Sentence> pool;
    for (const char* text : {"forall x:E. P(x)", "exists x:E. Q(x)", "forall x:E. exists y:E. R(x, y)",
                             "forall x:E. forall y:E. R(x, y) -> R(y, x)", "exists x:E. R(x, x) & P(x)",
                             "forall x:E. forall y:E. forall z:E. R(x, y) & R(y, z) -> R(x, z)",
                             "forall x:E. P(x) -> exists y:E. R(x, y) & Q(y)"})
        pool.push_back(logic::parse_sentence(sig, text));
    for (auto _ : state) {
        auto rows = truth::materialize_incidence(models, pool, exec);
        benchmark::DoNotOptimize(rows);
    }
    state.counters["models"] = static_cast<double>(models.size());
}

}  // namespace

BENCHMARK_CAPTURE(concepts, serial_next_closure, Exec::serial)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(concepts, parallel_close_by_one, Exec::parallel)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(incidence, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(incidence, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
