#include <benchmark/benchmark.h>

#include "rmplate/assembly.hpp"
#include "rmplate/solver.hpp"

using namespace rmplate;

namespace {

PlateModel uniform() {
  PlateModel m;
  m.thickness = 1e-3;
  m.transverse_load = [](const Point&) { return 1.0; };
  return m;
}

void BM_Assemble(benchmark::State& state) {
  const Mesh mesh = unit_square_mesh(static_cast<int>(state.range(0)));
  const auto spaces = make_discretization(mesh, BoundaryCondition::Clamped, MultiplierBasis::Dual);
  const PlateModel model = uniform();
  for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh, spaces, model));
  state.counters["triangles"] = static_cast<double>(mesh.num_triangles());
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveSaddle(benchmark::State& state) {
  const Mesh mesh = unit_square_mesh(static_cast<int>(state.range(0)));
  const auto spaces = make_discretization(mesh, BoundaryCondition::Clamped, MultiplierBasis::Dual);
  const BlockSystem sys = assemble(mesh, spaces, uniform());
  for (auto _ : state) benchmark::DoNotOptimize(solve_saddle(sys));
  state.counters["unknowns"] = static_cast<double>(sys.size());
}
BENCHMARK(BM_SolveSaddle)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveCondensed(benchmark::State& state) {
  const Mesh mesh = unit_square_mesh(static_cast<int>(state.range(0)));
  const auto spaces = make_discretization(mesh, BoundaryCondition::Clamped, MultiplierBasis::Dual);
  const BlockSystem sys = assemble(mesh, spaces, uniform());
  for (auto _ : state) benchmark::DoNotOptimize(solve_condensed(sys));
  state.counters["unknowns"] = static_cast<double>(condense(sys).matrix.rows());
}
BENCHMARK(BM_SolveCondensed)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
