// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "covcat/fibre_product.hpp"
#include "covcat/galois.hpp"

using namespace covcat;

namespace {

corpus::Cover cover_of(std::int64_t sheets) {
    return corpus::cyclic_cover(corpus::shape_b(), static_cast<std::size_t>(sheets), Field::rationals());
}

void BM_CheckCovering(benchmark::State& state) {
    const corpus::Cover cover = cover_of(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_covering(cover.functor));
    }
}
BENCHMARK(BM_CheckCovering)->RangeMultiplier(2)->Range(2, 32);

void BM_FibreProduct(benchmark::State& state) {
    const corpus::Cover cover = cover_of(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fibre_product(cover.functor, cover.functor));
    }
}
BENCHMARK(BM_FibreProduct)->RangeMultiplier(2)->Range(2, 8);

void BM_DeckGroup(benchmark::State& state) {
    const corpus::Cover cover = cover_of(state.range(0));
    const CoveringCheck check = check_covering(cover.functor);
    for (auto _ : state) {
        benchmark::DoNotOptimize(deck_group(*check.certificate));
    }
}
BENCHMARK(BM_DeckGroup)->RangeMultiplier(2)->Range(2, 16);

void BM_GaloisFibreMethod(benchmark::State& state) {
    const corpus::Cover cover = cover_of(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_galois(cover.functor, GaloisMethod::FibreProduct));
    }
}
BENCHMARK(BM_GaloisFibreMethod)->RangeMultiplier(2)->Range(2, 8);

}  // namespace
BENCHMARK_MAIN();
