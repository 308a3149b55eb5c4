#include "k3forms/decision.hpp"

#include <benchmark/benchmark.h>

using namespace k3;

static void BM_HilbertSymbol(benchmark::State& state) {
    Rational a(3 * 49 * 8, 5);
    Rational b(-7 * 121, 12);
    Place p = Place::finite(7);
    for (auto _ : state) benchmark::DoNotOptimize(hilbert_symbol(a, b, p));
}
BENCHMARK(BM_HilbertSymbol);

static void BM_LambdaInvariants(benchmark::State& state) {
    for (auto _ : state) {
        QuadraticSpace lambda = lambda_space();
        benchmark::DoNotOptimize(lambda.hasse_invariant(Place::finite(2)));
    }
}
BENCHMARK(BM_LambdaInvariants);

static void BM_Decide(benchmark::State& state) {
    FieldPtr f = NumberField::make(Poly({Rational(-2), Rational(0), Rational(1)}));
    FieldElement p1 = f->element({Rational(-1), Rational(1)});
    FieldElement n3 = f->element({Rational(-3), Rational(1)});
    TRGram g(3, std::vector<FieldElement>(3, f->zero()));
    g[0][0] = p1;
    g[1][1] = p1;
    g[2][2] = n3;
    HermitianSpace s = HermitianSpace::make(f, std::move(g));
    for (auto _ : state) benchmark::DoNotOptimize(is_k3_type(s).is_k3_type);
}
BENCHMARK(BM_Decide);

static void BM_PeriodWitness(benchmark::State& state) {
    FieldPtr q = NumberField::make(Poly({Rational(0), Rational(1)}));
    TRGram g(4, std::vector<FieldElement>(4, q->zero()));
    g[0][0] = q->one();
    g[1][1] = q->one();
    g[2][2] = q->from_rational(Rational(-1));
    g[3][3] = q->from_rational(Rational(-1));
    HermitianSpace s = HermitianSpace::make(q, std::move(g));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(construct_period_witness(s, seed++, 1e-9).bfbar);
}
BENCHMARK(BM_PeriodWitness);

BENCHMARK_MAIN();
