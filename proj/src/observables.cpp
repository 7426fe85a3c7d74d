#include "circle_cs/observables.hpp"

#include "circle_cs/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <utility>

namespace circle_cs {

namespace {

constexpr double kSqrtPi = 1.772453850905516027298167483341145;

double a_squared() {
    const double a = normalization_constant();
    return a * a;
}

struct Arc {
    double lo;
    double hi;
    double offset; // d = phi - alpha + offset
};

std::vector<Arc> branch_arcs(double alpha) {
    std::vector<Arc> arcs;
    if (alpha >= 0.0) {
        if (alpha > 0.0) arcs.push_back({-kPi, alpha - kPi, kTwoPi});
        arcs.push_back({alpha - kPi, kPi, 0.0});
    } else {
        arcs.push_back({-kPi, alpha + kPi, 0.0});
        arcs.push_back({alpha + kPi, kPi, -kTwoPi});
    }
    return arcs;
}

// sum over arcs of int f(phi, d) A^2 e^{-d^2} dphi
Complex integrate_arcs(double alpha, const QuadratureSpec& spec,
                       const std::function<Complex(double phi, double d)>& weight) {
    const double a2 = a_squared();
    Complex total = 0.0;
    for (const auto& arc : branch_arcs(alpha)) {
        const auto integrand = [&](double phi) {
            const double d = phi - alpha + arc.offset;
            return weight(phi, d) * (a2 * std::exp(-d * d));
        };
        total += integrate(integrand, arc.lo, arc.hi, spec).value;
    }
    return total;
}

} // namespace

double expectation_Q(const StateLabel& label) {
    // Closed form holds for alpha in [0, pi]; negative alpha by reflection.
    const double alpha = label.alpha.value();
    const double shift = std::abs(alpha);
    const double mean = shift - a_squared() * kPi * kSqrtPi * (erf_real(kPi) - erf_real(kPi - shift));
    return alpha < 0.0 ? -mean : mean;
}

double expectation_P(const StateLabel& label) { return static_cast<double>(label.m); }

double expectation_P2(const StateLabel& label) {
    const double m = static_cast<double>(label.m);
    return m * m + momentum_dispersion(label);
}

double momentum_dispersion(const StateLabel&) {
    return 0.5 + a_squared() * kPi * std::exp(-kPi * kPi);
}

QuadratureSpec observable_quadrature_spec() {
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    return spec;
}

double expectation_Q_quadrature(const StateLabel& label, const QuadratureSpec& spec) {
    return integrate_arcs(label.alpha.value(), spec, [](double phi, double) { return Complex(phi); })
        .real();
}

Complex expectation_P_quadrature(const StateLabel& label, const QuadratureSpec& spec) {
    const double m = static_cast<double>(label.m);
    return integrate_arcs(label.alpha.value(), spec,
                          [m](double, double d) { return Complex(m, d); });
}

Complex expectation_P2_quadrature(const StateLabel& label, const QuadratureSpec& spec) {
    const double m = static_cast<double>(label.m);
    return integrate_arcs(label.alpha.value(), spec, [m](double, double d) {
        const Complex t(m, d);
        return 1.0 + t * t;
    });
}

FourierMoments momentum_moments_fourier(const StateLabel& label, std::size_t n_grid, int n_max) {
    const auto coeffs = fourier_coefficients(sample_state(label, n_grid), n_max);
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (int n = -n_max; n <= n_max; ++n) {
        const double w = std::norm(coeffs[static_cast<std::size_t>(n + n_max)]);
        const double k = static_cast<double>(n);
        s0 += w;
        s1 += k * w;
        s2 += k * k * w;
    }
    return {s1 / s0, s2 / s0, kTwoPi * s0};
}

ResolutionReport resolution_check(const SampledWaveFunction& eta, int k_max,
                                  const QuadratureSpec& spec, kernels::Execution exec) {
    if (k_max < 0) {
        throw DomainError("resolution_check: k_max must be nonnegative");
    }
    const std::size_t n = eta.n_grid();
    if (n < 4 * static_cast<std::size_t>(k_max)) {
        throw DomainError("resolution_check: n_grid must be at least 4 k_max");
    }
    if (std::abs(eta.norm2() - 1.0) > 1e-9) {
        throw DomainError("resolution_check: eta is not normalized");
    }

    const auto table = kernels::twiddles(n);
    const double amp = normalization_constant();
    const std::size_t dim = 2 * static_cast<std::size_t>(k_max) + 1;
    const auto samples = eta.amplitudes();

    // For fixed alpha, <k,alpha|eta> = 2 pi c_k where c_k are the grid Fourier
    // coefficients of A g(phi - alpha) eta(phi).
    const VectorIntegrand integrand = [&](double alpha, std::span<double> out) {
        std::vector<Complex> product(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double d = Angle(eta.phi(j) - alpha).value();
            product[j] = (amp * std::exp(-0.5 * d * d)) * samples[j];
        }
        std::vector<Complex> coeffs(dim);
        kernels::fourier_coefficients_serial(product, table, k_max, coeffs);
        for (std::size_t i = 0; i < dim; ++i) out[i] = std::norm(kTwoPi * coeffs[i]);
    };

    // g(phi_j - alpha) has its kink at alpha = phi_j + pi (mod 2 pi).
    std::vector<double> kinks(n);
    for (std::size_t j = 0; j < n; ++j) kinks[j] = Angle(eta.phi(j) + kPi).value();
    QuadratureSpec local = spec;
    local.split_points = interior_split_points(-kPi, kPi, std::move(kinks));

    const auto r = integrate_vector(integrand, dim, -kPi, kPi, local, exec);

    ResolutionReport report;
    report.k_max = k_max;
    report.per_k_terms = r.value;
    report.convergence.resize(static_cast<std::size_t>(k_max) + 1);
    double partial = report.per_k_terms[static_cast<std::size_t>(k_max)];
    report.convergence[0] = partial;
    for (int k = 1; k <= k_max; ++k) {
        partial += report.per_k_terms[static_cast<std::size_t>(k_max - k)];
        partial += report.per_k_terms[static_cast<std::size_t>(k_max + k)];
        report.convergence[static_cast<std::size_t>(k)] = partial;
    }
    report.estimate = partial;
    report.defect = std::abs(partial - kTwoPi);
    report.n_grid = n;
    report.abs_tol = spec.abs_tol;
    report.rel_tol = spec.rel_tol;
    report.max_depth = spec.max_depth;
    report.err_est = r.err_est;
    report.panels = r.panels;
    return report;
}

SampledWaveFunction resolution_test_vector(std::string_view name, std::size_t n_grid) {
    if (name == "vacuum") {
        return sample_state(StateLabel{}, n_grid).normalized();
    }
    if (name == "two_peak") {
        const auto left = sample_state(StateLabel{0, Angle(-0.5 * kPi)}, n_grid);
        const auto right = sample_state(StateLabel{0, Angle(0.5 * kPi)}, n_grid);
        std::vector<Complex> sum(n_grid);
        for (std::size_t j = 0; j < n_grid; ++j) sum[j] = left[j] + right[j];
        return SampledWaveFunction(std::move(sum)).normalized();
    }
    constexpr std::string_view prefix = "plane_wave_";
    if (name.starts_with(prefix)) {
        const auto digits = name.substr(prefix.size());
        long k = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
            if (n_grid < 2) throw DomainError("resolution_test_vector: grid too small");
            std::vector<Complex> wave(n_grid);
            const double scale = 1.0 / std::sqrt(kTwoPi);
            for (std::size_t j = 0; j < n_grid; ++j) {
                wave[j] = std::polar(scale, static_cast<double>(k) *
                                                SampledWaveFunction::grid_point(j, n_grid));
            }
            return SampledWaveFunction(std::move(wave)).normalized();
        }
    }
    throw DomainError("unknown test vector '" + std::string(name) + "'");
}

std::string to_json(const ResolutionReport& report) {
    nlohmann::ordered_json j;
    j["k_max"] = report.k_max;
    j["estimate"] = report.estimate;
    j["defect"] = report.defect;
    j["per_k_terms"] = report.per_k_terms;
    auto table = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < report.convergence.size(); ++k) {
        table.push_back({{"k", k}, {"estimate", report.convergence[k]}});
    }
    j["convergence"] = std::move(table);
    j["engine"] = {{"abs_tol", report.abs_tol}, {"rel_tol", report.rel_tol},
                   {"max_depth", report.max_depth}, {"err_est", report.err_est},
                   {"panels", report.panels}, {"n_grid", report.n_grid}};
    return j.dump(2) + "\n";
}

} // namespace circle_cs
