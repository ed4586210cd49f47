#include <benchmark/benchmark.h>

#include "chmorley/assembly.hpp"
#include "chmorley/interface.hpp"
#include "chmorley/norms.hpp"
#include "chmorley/stepper.hpp"

using namespace chmorley;

namespace {

const Mesh& bench_mesh(int n) {
  static std::map<int, Mesh> meshes;
  auto it = meshes.find(n);
  if (it == meshes.end()) it = meshes.emplace(n, Mesh::uniform(n)).first;
  return it->second;
}

const MorleySpace& bench_space(int n) {
  static std::map<int, MorleySpace> spaces;
  auto it = spaces.find(n);
  if (it == spaces.end()) it = spaces.emplace(n, MorleySpace(bench_mesh(n))).first;
  return it->second;
}

}  // namespace

static void BM_BuildSpace(benchmark::State& state) {
  const Mesh& mesh = bench_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    MorleySpace space(mesh);
    benchmark::DoNotOptimize(space);
  }
  state.SetItemsProcessed(state.iterations() * mesh.element_count());
}
BENCHMARK(BM_BuildSpace)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_AssembleMass(benchmark::State& state) {
  const MorleySpace& space = bench_space(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SparseMat m = assemble_mass(space);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * space.mesh().element_count());
}
BENCHMARK(BM_AssembleMass)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_AssembleNonlinear(benchmark::State& state) {
  const MorleySpace& space = bench_space(static_cast<int>(state.range(0)));
  const MorleyFunction u = interpolate(space, two_circle_initial_condition(0.08));
  for (auto _ : state) {
    NonlinearTerm term = assemble_nonlinear_term(space, u.coeffs);
    benchmark::DoNotOptimize(term);
  }
  state.SetItemsProcessed(state.iterations() * space.mesh().element_count());
}
BENCHMARK(BM_AssembleNonlinear)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_NewtonStep(benchmark::State& state) {
  const MorleySpace& space = bench_space(static_cast<int>(state.range(0)));
  SchemeParams params;
  params.eps = 0.08;
  params.dt = 1e-5;
  params.t_end = 1.0;
  CahnHilliardStepper stepper(space, params);
  const SimulationState start = stepper.initialize(two_circle_initial_condition(0.08));
  for (auto _ : state) {
    SimulationState s = start;
    stepper.advance(s);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_NewtonStep)->Arg(16)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_Energy(benchmark::State& state) {
  const MorleySpace& space = bench_space(static_cast<int>(state.range(0)));
  const MorleyFunction u = interpolate(space, two_circle_initial_condition(0.08));
  for (auto _ : state) benchmark::DoNotOptimize(energy(u, 0.08));
}
BENCHMARK(BM_Energy)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ExtractZeroSet(benchmark::State& state) {
  const MorleySpace& space = bench_space(64);
  const MorleyFunction u = interpolate(space, two_circle_initial_condition(0.08));
  for (auto _ : state) {
    InterfaceCurve curve = extract_zero_set(u, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(BM_ExtractZeroSet)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
