// Serial reference kernels against their OpenMP counterparts. Set
// CIRCLE_CS_THREADS to cap the parallel runs.

#include "circle_cs/kernels.hpp"
#include "circle_cs/observables.hpp"
#include "circle_cs/overlaps.hpp"
#include "circle_cs/parallel.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace circle_cs;

namespace {

void sample(benchmark::State& state, kernels::Execution exec) {
    std::vector<Complex> out(static_cast<std::size_t>(state.range(0)));
    const StateLabel label{3, Angle(0.7)};
    for (auto _ : state) {
        if (exec == kernels::Execution::parallel) {
            kernels::sample_coherent_parallel(label, out);
        } else {
            kernels::sample_coherent_serial(label, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void fourier(benchmark::State& state, kernels::Execution exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int n_max = static_cast<int>(n / 4);
    const auto psi = sample_state({2, Angle(-1.1)}, n);
    const auto table = kernels::twiddles(n);
    std::vector<Complex> out(2 * static_cast<std::size_t>(n_max) + 1);
    for (auto _ : state) {
        kernels::fourier_coefficients(exec, psi.amplitudes(), table, n_max, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void scan(benchmark::State& state, kernels::Execution exec) {
    std::vector<std::pair<StateLabel, StateLabel>> pairs;
    for (int i = 0; i <= 10; ++i) {
        for (long dn = -5; dn <= 5; ++dn) {
            pairs.emplace_back(StateLabel{0, Angle(0.0)}, StateLabel{dn, Angle(kPi * i / 10.0)});
        }
    }
    for (auto _ : state) {
        auto cells = exec == kernels::Execution::parallel ? overlap_scan_parallel(pairs) : overlap_scan_serial(pairs);
        benchmark::DoNotOptimize(cells.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pairs.size()));
}

void resolution(benchmark::State& state, kernels::Execution exec) {
    const auto eta = resolution_test_vector("two_peak", 256);
    const int k_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto report = resolution_check(eta, k_max, {}, exec);
        benchmark::DoNotOptimize(report.estimate);
    }
}

} // namespace

BENCHMARK_CAPTURE(sample, serial, kernels::Execution::serial)->Arg(4096)->Arg(65536);
BENCHMARK_CAPTURE(sample, parallel, kernels::Execution::parallel)->Arg(4096)->Arg(65536);
BENCHMARK_CAPTURE(fourier, serial, kernels::Execution::serial)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(fourier, parallel, kernels::Execution::parallel)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(scan, serial, kernels::Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(scan, parallel, kernels::Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(resolution, serial, kernels::Execution::serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(resolution, parallel, kernels::Execution::parallel)->Arg(8)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    apply_thread_cap_from_env();
    benchmark::AddCustomContext("omp_threads", std::to_string(max_threads()));
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
