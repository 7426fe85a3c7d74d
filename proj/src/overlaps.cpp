#include "circle_cs/overlaps.hpp"

#include "circle_cs/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace circle_cs {

namespace {

constexpr double kSqrtPi = 1.772453850905516027298167483341145;

void check_wedge(double alpha, double beta) {
    if (!(alpha >= 0.0 && alpha <= beta && beta <= kPi)) {
        throw DomainError("overlap: need 0 <= alpha <= beta <= pi");
    }
}

// int_{-h}^{h} exp(i dn w - w^2) dw. The two erf terms are complex
// conjugates, so the sum is real.
double gauss_window(double h, long dn) {
    const double k = static_cast<double>(dn);
    const Complex upper = erf_complex({h, 0.5 * k});
    const Complex lower = erf_complex({h, -0.5 * k});
    return 0.5 * kSqrtPi * std::exp(-0.25 * k * k) * (upper + lower).real();
}

// Kink of the wrapped envelope of a state displaced by alpha.
double envelope_kink(const Angle& alpha) { return Angle(alpha.value() + kPi).value(); }

} // namespace

std::string_view to_string(OverlapMethod method) {
    return method == OverlapMethod::analytic ? "analytic" : "quadrature";
}

Complex overlap_I1(double alpha, double beta, long dn) {
    check_wedge(alpha, beta);
    const double half_gap = 0.5 * (beta - alpha);
    const double centre = 0.5 * (alpha + beta) - kPi;
    const double weight = std::exp(-(kPi - half_gap) * (kPi - half_gap)) * gauss_window(half_gap, dn);
    return std::polar(1.0, static_cast<double>(dn) * centre) * weight;
}

Complex overlap_I2(double alpha, double beta, long dn) {
    check_wedge(alpha, beta);
    const double half_gap = 0.5 * (beta - alpha);
    const double centre = 0.5 * (alpha + beta);
    const double weight = std::exp(-half_gap * half_gap) * gauss_window(kPi - half_gap, dn);
    return std::polar(1.0, static_cast<double>(dn) * centre) * weight;
}

double overlap_prefactor() {
    const double a = normalization_constant();
    return a * a;
}

OverlapResult overlap(const StateLabel& a, const StateLabel& b) {
    if (a == b) {
        return {Complex(1.0, 0.0), OverlapMethod::analytic, 0.0};
    }
    const long dn = b.m - a.m;
    if (std::abs(dn) > kAnalyticMaxDn) {
        return overlap_quadrature(a, b);
    }
    const double p = overlap_prefactor();
    const double k = static_cast<double>(dn);
    // <m,alpha|n,beta> = e^{i dn alpha} <m,0|n,wrap(beta-alpha)>
    const double rel = Angle(b.alpha.value() - a.alpha.value()).value();
    const Complex rotation = std::polar(1.0, k * a.alpha.value());
    Complex reduced;
    double magnitude = 0.0;
    if (rel >= 0.0) {
        const Complex i1 = overlap_I1(0.0, rel, dn);
        const Complex i2 = overlap_I2(0.0, rel, dn);
        reduced = p * (i1 + i2);
        magnitude = p * (std::abs(i1) + std::abs(i2));
    } else {
        // <m,0|n,rel> = conj(<n,rel|m,0>) = e^{i dn rel} conj(<n,0|m,-rel>)
        const Complex i1 = overlap_I1(0.0, -rel, -dn);
        const Complex i2 = overlap_I2(0.0, -rel, -dn);
        reduced = std::polar(1.0, k * rel) * std::conj(p * (i1 + i2));
        magnitude = p * (std::abs(i1) + std::abs(i2));
    }
    const double err = 1e-12 * magnitude + 8.0 * std::numeric_limits<double>::epsilon();
    return {rotation * reduced, OverlapMethod::analytic, err};
}

OverlapResult overlap_quadrature(const StateLabel& a, const StateLabel& b, const QuadratureSpec& spec) {
    QuadratureSpec local = spec;
    local.split_points = interior_split_points(
        -kPi, kPi, {envelope_kink(a.alpha), envelope_kink(b.alpha)});
    const auto integrand = [&](double phi) {
        const Angle x(phi);
        return std::conj(coherent_eval(a, x)) * coherent_eval(b, x);
    };
    const auto r = integrate(integrand, -kPi, kPi, local);
    return {r.value, OverlapMethod::quadrature, r.err_est};
}

PrefactorCalibration calibrate_prefactor(const QuadratureSpec& spec) {
    PrefactorCalibration c;
    const StateLabel vac{};
    c.quadrature_value = overlap_quadrature(vac, vac, spec).value.real();
    c.closed_form_sum = (overlap_I1(0.0, 0.0, 0) + overlap_I2(0.0, 0.0, 0)).real();
    const double a = normalization_constant();
    c.residual_a = std::abs(a * c.closed_form_sum - c.quadrature_value);
    c.residual_a2 = std::abs(a * a * c.closed_form_sum - c.quadrature_value);
    c.is_a_squared = c.residual_a2 < c.residual_a;
    c.chosen = c.is_a_squared ? a * a : a;
    return c;
}

namespace {

OverlapCell scan_cell(const std::pair<StateLabel, StateLabel>& pair, const QuadratureSpec& spec) {
    return {pair.first, pair.second, overlap(pair.first, pair.second),
            overlap_quadrature(pair.first, pair.second, spec)};
}

} // namespace

std::vector<OverlapCell> overlap_scan_serial(std::span<const std::pair<StateLabel, StateLabel>> pairs,
                                             const QuadratureSpec& spec) {
    std::vector<OverlapCell> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = scan_cell(pairs[i], spec);
    return out;
}

std::vector<OverlapCell> overlap_scan_parallel(std::span<const std::pair<StateLabel, StateLabel>> pairs,
                                               const QuadratureSpec& spec) {
    std::vector<OverlapCell> out(pairs.size());
    const auto n = static_cast<std::ptrdiff_t>(pairs.size());
    // ToleranceNotMet cannot leave an OpenMP region; capture and rethrow.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = scan_cell(pairs[static_cast<std::size_t>(i)], spec);
        } catch (...) {
#pragma omp critical(circle_cs_scan_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::string overlap_table_csv(
    std::span<const std::pair<std::pair<StateLabel, StateLabel>, OverlapResult>> rows) {
    std::string out = "m,alpha,n,beta,re,im,abs,method,err_est\n";
    for (const auto& [labels, r] : rows) {
        out += fmt::format("{},{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g},{},{:.17g}\n", labels.first.m,
                           labels.first.alpha.value(), labels.second.m, labels.second.alpha.value(),
                           r.value.real(), r.value.imag(), std::abs(r.value), to_string(r.method),
                           r.err_est);
    }
    return out;
}

} // namespace circle_cs
