#include "circle_cs/circle_states.hpp"

#include "circle_cs/errors.hpp"
#include "circle_cs/kernels.hpp"

#include <fmt/format.h>

#include <cmath>
#include <string>
#include <utility>

namespace circle_cs {

Angle::Angle(double radians) {
    if (!std::isfinite(radians)) {
        throw DomainError("Angle: non-finite value");
    }
    // std::remainder is exact and lands in [-pi, pi]; fold +pi onto -pi.
    double r = std::remainder(radians, kTwoPi);
    if (r >= kPi) r -= kTwoPi;
    value_ = r;
}

Angle wrap_angle(double x) { return Angle(x); }

double normalization_constant() {
    static const double a = 1.0 / std::sqrt(std::sqrt(kPi) * erf_real(kPi));
    return a;
}

namespace {

// m = 0 must give +0 rather than sin(-0) on the left half of the circle.
double phase_angle(long m, double phi) { return m == 0 ? 0.0 : static_cast<double>(m) * phi; }

} // namespace

Complex coherent_eval(const StateLabel& label, Angle phi) {
    const double d = Angle(phi.value() - label.alpha.value()).value();
    const double envelope = normalization_constant() * std::exp(-0.5 * d * d);
    return std::polar(envelope, phase_angle(label.m, phi.value()));
}

Complex coherent_eval_unwrapped(const StateLabel& label, Angle phi) {
    const double d = phi.value() - label.alpha.value();
    const double envelope = normalization_constant() * std::exp(-0.5 * d * d);
    return std::polar(envelope, phase_angle(label.m, phi.value()));
}

double vacuum(Angle phi) { return coherent_eval(StateLabel{}, phi).real(); }

SampledWaveFunction::SampledWaveFunction(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw DomainError("SampledWaveFunction: need at least 2 grid points");
    }
    for (const auto& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw DomainError("SampledWaveFunction: non-finite amplitude");
        }
    }
}

double SampledWaveFunction::norm2() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return kTwoPi * sum / static_cast<double>(n_grid());
}

SampledWaveFunction SampledWaveFunction::normalized() const {
    const double n2 = norm2();
    if (!(n2 > 0.0)) {
        throw DomainError("SampledWaveFunction: cannot normalize a zero state");
    }
    const double scale = 1.0 / std::sqrt(n2);
    std::vector<Complex> out(amplitudes_);
    for (auto& a : out) a *= scale;
    return SampledWaveFunction(std::move(out));
}

SampledWaveFunction sample_state(const StateLabel& label, std::size_t n_grid) {
    if (n_grid < 16) {
        throw DomainError("sample_state: n_grid must be at least 16");
    }
    std::vector<Complex> amplitudes(n_grid);
    kernels::sample_coherent_parallel(label, amplitudes);
    return SampledWaveFunction(std::move(amplitudes));
}

std::vector<Complex> fourier_coefficients(const SampledWaveFunction& psi, int n_max) {
    if (n_max < 0) {
        throw DomainError("fourier_coefficients: n_max must be nonnegative");
    }
    if (psi.n_grid() < 4 * static_cast<std::size_t>(n_max)) {
        throw DomainError("fourier_coefficients: n_grid must be at least 4 n_max");
    }
    const auto table = kernels::twiddles(psi.n_grid());
    std::vector<Complex> out(2 * static_cast<std::size_t>(n_max) + 1);
    kernels::fourier_coefficients_parallel(psi.amplitudes(), table, n_max, out);
    return out;
}

namespace grid_ops {

SampledWaveFunction apply_phase(const SampledWaveFunction& psi, long m) {
    std::vector<Complex> out(psi.n_grid());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = std::polar(1.0, static_cast<double>(m) * psi.phi(j)) * psi[j];
    }
    return SampledWaveFunction(std::move(out));
}

SampledWaveFunction apply_shift(const SampledWaveFunction& psi, double alpha) {
    const auto n = static_cast<long>(psi.n_grid());
    const double steps = alpha * static_cast<double>(n) / kTwoPi;
    const double rounded = std::round(steps);
    if (!std::isfinite(steps) || std::abs(steps - rounded) > 1e-9) {
        throw DomainError("apply_shift: alpha is not a multiple of the grid spacing");
    }
    const long s = ((static_cast<long>(rounded) % n) + n) % n;
    std::vector<Complex> out(psi.n_grid());
    for (long j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(j)] = psi[static_cast<std::size_t>((j - s + n) % n)];
    }
    return SampledWaveFunction(std::move(out));
}

} // namespace grid_ops

std::string to_csv(const SampledWaveFunction& psi) {
    std::string out = "phi,re,im\n";
    for (std::size_t j = 0; j < psi.n_grid(); ++j) {
        out += fmt::format("{:.17g},{:.17g},{:.17g}\n", psi.phi(j), psi[j].real(), psi[j].imag());
    }
    return out;
}

} // namespace circle_cs
