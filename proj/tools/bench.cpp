// Compares the serial trial runner against the OpenMP worker pool on a fixed
// greater-than bias sweep and checks that both produce identical results.
#include <chrono>
#include <cstdio>
#include <thread>

#include "coevo/experiments.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double run_sweep_seconds(coevo::RunOptions opt, int jobs, coevo::SweepOutcome& out) {
    opt.jobs = jobs;
    auto t0 = Clock::now();
    out = coevo::run_bias_sweep(opt);
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool same_results(const coevo::SweepOutcome& a, const coevo::SweepOutcome& b) {
    if (a.trials.size() != b.trials.size()) return false;
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        const auto& x = a.trials[i];
        const auto& y = b.trials[i];
        if (x.seed != y.seed || x.best_objective != y.best_objective ||
            x.disengaged_generations != y.disengaged_generations)
            return false;
    }
    return true;
}

}  // namespace

int main() {
    coevo::RunOptions opt = coevo::default_options("sweep", coevo::DomainKind::greater_than);
    opt.grid = coevo::GridKind::coarse;
    opt.trials = 20;
    opt.techniques = {coevo::MitigationStrategy::Kind::baseline,
                      coevo::MitigationStrategy::Kind::sf};
    opt.seed = 42;

    unsigned hw = std::max(2u, std::thread::hardware_concurrency());
    coevo::SweepOutcome serial, parallel;
    double t_serial = run_sweep_seconds(opt, 1, serial);
    double t_parallel = run_sweep_seconds(opt, static_cast<int>(hw), parallel);

    std::printf("trials: %zu\n", serial.trials.size());
    std::printf("serial (reference): %.3f s\n", t_serial);
    std::printf("openmp (%u workers): %.3f s  (speedup %.2fx)\n", hw, t_parallel,
                t_serial / t_parallel);
    if (!same_results(serial, parallel)) {
        std::printf("MISMATCH: parallel results differ from serial reference\n");
        return 1;
    }
    std::printf("results identical across both paths\n");
    return 0;
}
