#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "aesclass/aes.hpp"
#include "aesclass/class_algebra.hpp"
#include "aesclass/sbox_distribution.hpp"

using namespace aesclass;

static void BM_GfMulShiftAdd(benchmark::State& state) {
    std::uint8_t a = 0x57;
    for (auto _ : state) {
        for (unsigned b = 0; b < 256; ++b) {
            a = static_cast<std::uint8_t>(a ^ gf_mul(GFByte(a), GFByte(static_cast<std::uint8_t>(b))).value);
        }
        benchmark::DoNotOptimize(a);
    }
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_GfMulShiftAdd);

static void BM_GfMulTable(benchmark::State& state) {
    const ProductTable& mul = ProductTable::instance();
    std::uint8_t a = 0x57;
    for (auto _ : state) {
        for (unsigned b = 0; b < 256; ++b) {
            a = static_cast<std::uint8_t>(a ^ mul(GFByte(a), GFByte(static_cast<std::uint8_t>(b))).value);
        }
        benchmark::DoNotOptimize(a);
    }
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_GfMulTable);

static void BM_EncryptBlock(benchmark::State& state) {
    Block p{};
    const Block key{};
    for (auto _ : state) {
        p = encrypt_block(p, key);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_EncryptBlock);

static void BM_ForwardPropagation(benchmark::State& state) {
    ClassVector v{{GFByte(1), GFByte(2), GFByte(3), GFByte(4)}};
    for (auto _ : state) {
        v = propagate_forward(v, ShiftPhase(0), 4).classes;
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_ForwardPropagation);

static void BM_PairTable(benchmark::State& state) {
    const auto& sbox = SBox::instance().forward_table();
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_pair_table(sbox));
    }
}
BENCHMARK(BM_PairTable)->Unit(benchmark::kMillisecond);

static void BM_FastCounts(benchmark::State& state) {
    const auto& sbox = SBox::instance().forward_table();
    for (auto _ : state) {
        benchmark::DoNotOptimize(xor_convolve_square(compute_pair_table(sbox)));
    }
}
BENCHMARK(BM_FastCounts)->Unit(benchmark::kMillisecond);

// Full 2^32 exhaust is minutes-scale; the 4-bit table keeps the loop shape.
static void BM_NaiveCountsNibble(benchmark::State& state) {
    std::vector<std::uint8_t> sbox(16);
    std::iota(sbox.begin(), sbox.end(), 0);
    std::shuffle(sbox.begin(), sbox.end(), std::mt19937_64(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_counts_naive(sbox, static_cast<unsigned>(state.range(0))));
    }
}
BENCHMARK(BM_NaiveCountsNibble)->Arg(1)->Arg(4);

BENCHMARK_MAIN();
