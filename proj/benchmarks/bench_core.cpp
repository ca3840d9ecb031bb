#include <benchmark/benchmark.h>

#include <random>

#include "sege/clucb.hpp"
#include "sege/estimator.hpp"
#include "sege/lcb_optimizer.hpp"
#include "sege/sege_policy.hpp"

using namespace sege;

namespace {

Vector vec(double a, double b) { return (Vector(2) << a, b).finished(); }

const EllipsoidArmSet kDisk = EllipsoidArmSet::ball(vec(1, 1), 1.0);

// Estimator after n noisy plays on the unit disk.
Estimator warmed(int n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise(0.0, 1.0);
    Estimator est(2, 0.1);
    for (int k = 0; k < n; ++k) {
        const Vector x = kDisk.boundary_point(vec(noise(rng), noise(rng)).normalized());
        est.update(x, x.dot(vec(0.6, 0.8)) + noise(rng));
    }
    return est;
}

ProblemInstance disk_problem() { return {kDisk, vec(1.2, 1.9), 2.24, 1.792, 1.0, 1.0, kDisk.max_norm()}; }

}  // namespace

static void BM_EstimatorUpdate(benchmark::State& state) {
    const auto d = static_cast<Eigen::Index>(state.range(0));
    Estimator est(d, 0.1);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0.0, 1.0);
    const Vector x = Vector::NullaryExpr(d, [&] { return n(rng); });
    for (auto _ : state) {
        est.update(x, 1.0);
        benchmark::DoNotOptimize(est.estimate().data());
    }
}
BENCHMARK(BM_EstimatorUpdate)->Arg(2)->Arg(4)->Arg(8);

static void BM_LcbArm(benchmark::State& state) {
    const Estimator est = warmed(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lcb_arm(est, kDisk, 3.0).value);
}
BENCHMARK(BM_LcbArm)->Arg(10)->Arg(1000);

static void BM_SegeStep(benchmark::State& state) {
    const Estimator est = warmed(static_cast<int>(state.range(0)));
    SegeConfig cfg;
    cfg.rho = 0.224;
    const ProblemInstance problem = disk_problem();
    Rng rng(3);
    const auto t = static_cast<std::int64_t>(state.range(0)) + 1;
    for (auto _ : state) benchmark::DoNotOptimize(sege_step(est, cfg, problem, t, rng).arm.data());
}
BENCHMARK(BM_SegeStep)->Arg(10)->Arg(1000)->Arg(10000);

static void BM_ClucbDecide(benchmark::State& state) {
    ClucbPolicy policy(ClucbConfig{}, disk_problem());
    for (auto _ : state) benchmark::DoNotOptimize(policy.decide().arm.data());
}
BENCHMARK(BM_ClucbDecide);
BENCHMARK_MAIN();
