#include "lmass/density.hpp"
#include "lmass/mass_prime.hpp"
#include "lmass/mass_quartic.hpp"
#include "lmass/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace lmass;

static void BM_UnitClassBasis(benchmark::State& st) {
    auto F = make_field(2, st.range(0), 1);
    for (auto _ : st) benchmark::DoNotOptimize(UnitClassBasis(F).dim());
}
BENCHMARK(BM_UnitClassBasis)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_CyclicPremass(benchmark::State& st) {
    auto F = make_field(3, st.range(0), 1);
    std::vector<Elem> gens = {F->from_int(-1), F->uniformizer()};
    for (auto _ : st) benchmark::DoNotOptimize(premass_ell_total(*F, 3, gens).premass);
}
BENCHMARK(BM_CyclicPremass)->Arg(1)->Arg(2)->Arg(4);

static void BM_QuarticWild(benchmark::State& st) {
    auto F = make_field(2, st.range(0), 1, 3 * min_precision(2, st.range(0)));
    std::vector<Elem> gens = {F->from_int(-1), F->from_int(3)};
    for (auto _ : st) benchmark::DoNotOptimize(premass4(F, gens).premass);
}
BENCHMARK(BM_QuarticWild)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_NecSizes(benchmark::State& st) {
    auto F = make_field(2, 2, 1, 3 * min_precision(2, 2));
    SquareClasses SF(F);
    auto C = choose_omega(SF, F->from_int(5));
    std::vector<Elem> gens = {F->from_int(-1), F->from_int(3), F->uniformizer()};
    auto algo = st.range(0) ? NecAlgo::Subspace : NecAlgo::Brute;
    for (auto _ : st) benchmark::DoNotOptimize(nec_sizes(SF, C ? &*C : nullptr, gens, algo).total);
}
BENCHMARK(BM_NecSizes)->Arg(0)->Arg(1);

static void BM_QuarticTowers(benchmark::State& st) {
    auto F = make_field(2, 1, 1, 3 * min_precision(2, 1));
    for (auto _ : st) benchmark::DoNotOptimize(enum_quartic_towers(F, {F->from_int(-1)}).size());
}
BENCHMARK(BM_QuarticTowers)->Unit(benchmark::kMillisecond);

static void BM_Density(benchmark::State& st) {
    GlobalSpec s;
    s.n = 4;
    s.gens = {Rat(-1), Rat(2)};
    s.prime_bound = st.range(0);
    for (auto _ : st) benchmark::DoNotOptimize(euler_density(s).coeff_lo);
}
BENCHMARK(BM_Density)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
