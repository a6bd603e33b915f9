#include <benchmark/benchmark.h>

#include "fieldlab/fock.hpp"
#include "fieldlab/linear_dynamics.hpp"
#include "fieldlab/moyal.hpp"
#include "fieldlab/nonlinear_classical.hpp"
#include "fieldlab/numerics.hpp"

using namespace fieldlab;

static void BM_MatrixExp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    Eigen::MatrixXd a = random_symmetric(rng, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matrix_exp(a));
    }
}
BENCHMARK(BM_MatrixExp)->Arg(16)->Arg(64)->Arg(128);

static void BM_FockOperatorAssembly(benchmark::State& state) {
    const int modes = static_cast<int>(state.range(0));
    const auto space = FockSpace::make(modes, 6);
    Rng rng(2);
    const ModeVector eta = random_complex_vector(rng, modes);
    for (auto _ : state) {
        benchmark::DoNotOptimize(creation_operator(*space, eta));
    }
}
BENCHMARK(BM_FockOperatorAssembly)->Arg(2)->Arg(3)->Arg(4);

static void BM_VerletStep(benchmark::State& state) {
    const int sites = static_cast<int>(state.range(0));
    const auto lat = SpatialLattice::uniform(sites, 0.5);
    const FieldHamiltonian h(lat, 1.0, 0.5, 0.5);
    Rng rng(3);
    const PhaseVector eta0(lat, random_vector(rng, 2 * sites, 0.3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(nonlinear_evolve(h, eta0, 0.1, 1e-3));
    }
}
BENCHMARK(BM_VerletStep)->Arg(16)->Arg(64)->Arg(256);

static void BM_WeylStar(benchmark::State& state) {
    const auto lat = SpatialLattice::uniform(2);
    Rng rng(4);
    WeylElement a(lat), b(lat);
    for (int k = 0; k < static_cast<int>(state.range(0)); ++k) {
        a.add_term(PhaseVector(lat, random_vector(rng, 4)), Complex(1.0, 0.5));
        b.add_term(PhaseVector(lat, random_vector(rng, 4)), Complex(0.5, -1.0));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(weyl_star(a, b));
    }
}
BENCHMARK(BM_WeylStar)->Arg(4)->Arg(16)->Arg(64);

static void BM_MoyalStarPoly(benchmark::State& state) {
    const auto lat = SpatialLattice::uniform(1);
    const auto phi = PolynomialObservable::phi(lat, 0);
    const auto pi = PolynomialObservable::pi(lat, 0);
    const auto f = (phi + pi).pow(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(moyal_star_poly(f, f));
    }
}
BENCHMARK(BM_MoyalStarPoly)->Arg(2)->Arg(4)->Arg(6);
