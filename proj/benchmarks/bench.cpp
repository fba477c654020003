#include "g2cert/classifier.hpp"
#include "g2cert/g2_structure.hpp"
#include "g2cert/gauss_newton.hpp"
#include "g2cert/model_forms.hpp"
#include "g2cert/registry.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace g2cert;

const RegistryEntry& entry_mu_B() {
  static const RegistryEntry e = registry_load("mu_B");
  return e;
}

const G2Structure& structure_mu_B() {
  static const G2Structure s(entry_mu_B().algebra);
  return s;
}

void bm_wedge(benchmark::State& state) {
  const KForm& phi = phi_reference();
  KForm tau = tau_reference();
  for (auto _ : state) benchmark::DoNotOptimize(wedge(tau, phi));
}
BENCHMARK(bm_wedge);

void bm_hodge(benchmark::State& state) {
  const KForm& phi = phi_reference();
  for (auto _ : state) benchmark::DoNotOptimize(hodge(phi));
}
BENCHMARK(bm_hodge);

void bm_torsion(benchmark::State& state) {
  const LieAlgebra& l = entry_mu_B().algebra;
  for (auto _ : state) {
    G2Structure s(l);
    benchmark::DoNotOptimize(s.torsion());
  }
}
BENCHMARK(bm_torsion);

void bm_betti(benchmark::State& state) {
  const LieAlgebra& l = entry_mu_B().algebra;
  for (auto _ : state) benchmark::DoNotOptimize(l.betti());
}
BENCHMARK(bm_betti);

void bm_ricci(benchmark::State& state) {
  const LieAlgebra& l = entry_mu_B().algebra;
  const Eigen::MatrixXd& g = structure_mu_B().metric();
  for (auto _ : state) benchmark::DoNotOptimize(ricci(l, g));
}
BENCHMARK(bm_ricci);

void bm_theta(benchmark::State& state) {
  const Matrix4d a = entry_mu_B().quadruple.A;
  for (auto _ : state) benchmark::DoNotOptimize(theta(a));
}
BENCHMARK(bm_theta);

void bm_classifier_seed(benchmark::State& state) {
  ConstraintSystem sys = build_system(CaseId::N5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ClassifyOutcome out = solve_from_seeds(sys, 1, seed++);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_classifier_seed)->Unit(benchmark::kMillisecond);

void bm_registry_load(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(registry_load("mu_M3"));
}
BENCHMARK(bm_registry_load)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
