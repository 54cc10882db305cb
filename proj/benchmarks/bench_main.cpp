#include "xpinn/network/tangent_pass.hpp"
#include "xpinn/problems/problem.hpp"
#include "xpinn/quadrature/points.hpp"
#include "xpinn/solver/energy.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace xpinn;

void BM_CtmPoints(benchmark::State& state) {
  const auto p = problems::builtin("center_crack", state.range(0) == 1);
  const geom::Domain d(p.domain);
  for (auto _ : state) benchmark::DoNotOptimize(quad::domain_points(d, p.quadrature));
}
BENCHMARK(BM_CtmPoints)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_EnergyAndGradient(benchmark::State& state, const char* name) {
  const auto p = problems::builtin(name, true);
  const auto setup = problems::prepare(p);
  const solver::XpinnModel model(setup.domain, problems::model_config(p));
  solver::ModelEnergy e(model, setup.points, p.loads, p.material);
  std::vector<double> g(model.parameter_count());
  for (auto _ : state) benchmark::DoNotOptimize(e.evaluate(model, g));
  state.counters["points"] = static_cast<double>(e.point_count());
}
BENCHMARK_CAPTURE(BM_EnergyAndGradient, bar1d, "bar1d")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_EnergyAndGradient, center_crack, "center_crack")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnergyAndGradient, two_crack, "two_crack")->Unit(benchmark::kMillisecond);

void BM_TangentPass(benchmark::State& state) {
  const auto net = nn::init({4, 20, nn::Activation::tanh, 1}, 2, 1);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(2, state.range(0));
  nn::TangentPass pass;
  const Eigen::MatrixXd vbar = Eigen::MatrixXd::Ones(1, state.range(0));
  const std::vector<Eigen::MatrixXd> tbar(2, vbar);
  std::vector<double> g(net.parameter_count());
  for (auto _ : state) {
    pass.forward(net, x);
    pass.backward(vbar, tbar, g);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TangentPass)->Arg(1000)->Arg(6000)->Unit(benchmark::kMillisecond);

void BM_TapeEnergy(benchmark::State& state) {
  const auto p = problems::builtin("bar1d", true);
  const auto setup = problems::prepare(p);
  const solver::XpinnModel model(setup.domain, problems::model_config(p));
  for (auto _ : state) benchmark::DoNotOptimize(solver::tape_energy(model, setup.points, p.loads, p.material));
}
BENCHMARK(BM_TapeEnergy)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
