#include "circle_cs/kernels.hpp"

#include "circle_cs/circle_states.hpp"

#include <cmath>

namespace circle_cs::kernels {

std::vector<Complex> twiddles(std::size_t n) {
    std::vector<Complex> table(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double angle = -kTwoPi * static_cast<double>(t) / static_cast<double>(n);
        table[t] = {std::cos(angle), std::sin(angle)};
    }
    return table;
}

void sample_coherent_serial(const StateLabel& label, std::span<Complex> out) {
    const std::size_t n = out.size();
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = coherent_eval(label, Angle(SampledWaveFunction::grid_point(j, n)));
    }
}

void sample_coherent_parallel(const StateLabel& label, std::span<Complex> out) {
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        out[j] = coherent_eval(
            label, Angle(SampledWaveFunction::grid_point(static_cast<std::size_t>(j), out.size())));
    }
}

namespace {

// exp(-i n phi_j) = (-1)^n exp(-2 pi i n j / N) since phi_j = -pi + 2 pi j / N.
Complex coefficient(std::span<const Complex> psi, std::span<const Complex> table, long n) {
    const auto size = static_cast<long>(psi.size());
    const long step = ((n % size) + size) % size;
    Complex sum = 0.0;
    long t = 0;
    for (long j = 0; j < size; ++j) {
        sum += table[static_cast<std::size_t>(t)] * psi[static_cast<std::size_t>(j)];
        t += step;
        if (t >= size) t -= size;
    }
    sum /= static_cast<double>(size);
    return (n % 2 == 0) ? sum : -sum;
}

} // namespace

void fourier_coefficients_serial(std::span<const Complex> psi, std::span<const Complex> table,
                                 int n_max, std::span<Complex> out) {
    for (int n = -n_max; n <= n_max; ++n) {
        out[static_cast<std::size_t>(n + n_max)] = coefficient(psi, table, n);
    }
}

void fourier_coefficients_parallel(std::span<const Complex> psi, std::span<const Complex> table,
                                   int n_max, std::span<Complex> out) {
#pragma omp parallel for schedule(static)
    for (int n = -n_max; n <= n_max; ++n) {
        out[static_cast<std::size_t>(n + n_max)] = coefficient(psi, table, n);
    }
}

} // namespace circle_cs::kernels
