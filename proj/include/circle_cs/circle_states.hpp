#pragma once

#include "circle_cs/special_fn.hpp"

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace circle_cs {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Point of the unit circle, stored as its representative in [-pi, pi).
class Angle {
public:
    Angle() = default;
    /// Wraps any finite real modulo 2*pi. Throws DomainError otherwise.
    explicit Angle(double radians);

    double value() const noexcept { return value_; }

    friend bool operator==(Angle, Angle) = default;

private:
    double value_ = 0.0;
};

/// Canonical representative of x in [-pi, pi).
Angle wrap_angle(double x);

/// Label (m, alpha) of the coherent state |m, alpha>: momentum index and
/// angular displacement.
struct StateLabel {
    long m = 0;
    Angle alpha;

    friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

/// A = 1 / sqrt(sqrt(pi) erf(pi)), the vacuum normalization.
double normalization_constant();

/// A exp(i m phi) exp(-d^2/2) with d the representative of phi - alpha in
/// [-pi, pi). The phase uses the canonical phi.
Complex coherent_eval(const StateLabel& label, Angle phi);

/// Same state written without the modular shift: A exp(i m phi)
/// exp(-(phi - alpha)^2/2) for phi in [-pi, pi). Agrees with coherent_eval
/// only on the arc where phi - alpha needs no wrapping.
Complex coherent_eval_unwrapped(const StateLabel& label, Angle phi);

/// Vacuum wavefunction A exp(-phi^2/2).
double vacuum(Angle phi);

/// Wavefunction sampled on the uniform grid phi_j = -pi + 2 pi j / n,
/// j = 0..n-1. Immutable once built.
class SampledWaveFunction {
public:
    /// Requires at least two finite samples.
    explicit SampledWaveFunction(std::vector<Complex> amplitudes);

    std::size_t n_grid() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t j) const { return amplitudes_[j]; }

    double phi(std::size_t j) const noexcept { return grid_point(j, n_grid()); }

    /// Periodic trapezoidal rule for the integral of |psi|^2.
    double norm2() const;

    /// Copy rescaled to unit periodic-rule norm.
    SampledWaveFunction normalized() const;

    static double grid_point(std::size_t j, std::size_t n) noexcept {
        return -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    }

private:
    std::vector<Complex> amplitudes_;
};

/// Samples |label> on an n_grid point grid. Requires n_grid >= 16.
SampledWaveFunction sample_state(const StateLabel& label, std::size_t n_grid);

/// Fourier coefficients a_n, n = -n_max..n_max (index n + n_max), of
/// psi(phi) = sum_n a_n exp(i n phi), by the periodic trapezoidal rule.
/// Requires n_grid >= 4 n_max.
std::vector<Complex> fourier_coefficients(const SampledWaveFunction& psi, int n_max);

/// Grid realizations of the phase and rotation factors of W(m, alpha).
namespace grid_ops {

/// psi_j -> exp(i m phi_j) psi_j.
SampledWaveFunction apply_phase(const SampledWaveFunction& psi, long m);

/// (V(alpha) psi)(phi) = psi(phi - alpha) with the argument taken modulo
/// 2 pi. alpha must be a multiple of the grid spacing (to 1e-9 spacings);
/// the shift is then an exact cyclic rotation of the samples.
SampledWaveFunction apply_shift(const SampledWaveFunction& psi, double alpha);

} // namespace grid_ops

/// CSV with header `phi,re,im`, one row per grid point, 17 significant digits.
std::string to_csv(const SampledWaveFunction& psi);

} // namespace circle_cs
