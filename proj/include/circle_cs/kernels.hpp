#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a plain
// serial reference with the same arithmetic in the same order; both must
// produce bit-identical output.

#include "circle_cs/special_fn.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace circle_cs {

struct StateLabel;

namespace kernels {

enum class Execution { serial, parallel };

/// Twiddle table exp(-2 pi i t / n), t = 0..n-1.
std::vector<Complex> twiddles(std::size_t n);

/// out[j] = coherent_eval(label, phi_j) on the n = out.size() point grid.
void sample_coherent_serial(const StateLabel& label, std::span<Complex> out);
void sample_coherent_parallel(const StateLabel& label, std::span<Complex> out);

/// out[n + n_max] = (1/N) sum_j exp(-i n phi_j) psi_j for n = -n_max..n_max.
/// `table` is twiddles(psi.size()).
void fourier_coefficients_serial(std::span<const Complex> psi, std::span<const Complex> table,
                                 int n_max, std::span<Complex> out);
void fourier_coefficients_parallel(std::span<const Complex> psi, std::span<const Complex> table,
                                   int n_max, std::span<Complex> out);

inline void fourier_coefficients(Execution exec, std::span<const Complex> psi,
                                 std::span<const Complex> table, int n_max,
                                 std::span<Complex> out) {
    if (exec == Execution::parallel) {
        fourier_coefficients_parallel(psi, table, n_max, out);
    } else {
        fourier_coefficients_serial(psi, table, n_max, out);
    }
}

} // namespace kernels
} // namespace circle_cs
