#pragma once

#include "circle_cs/circle_states.hpp"
#include "circle_cs/kernels.hpp"
#include "circle_cs/quadrature.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace circle_cs {

/// <Q> = alpha - A^2 pi^{3/2} (erf(pi) - erf(pi - alpha)) for alpha >= 0,
/// odd in alpha. Independent of m.
double expectation_Q(const StateLabel& label);

/// <P> = m.
double expectation_P(const StateLabel& label);

/// <P^2> = m^2 + 1/2 + A^2 pi e^{-pi^2}, from the pointwise second
/// derivative on the two smooth arcs of the state.
double expectation_P2(const StateLabel& label);

/// <P^2> - <P>^2 = 1/2 + A^2 pi e^{-pi^2}.
double momentum_dispersion(const StateLabel& label);

/// Tolerances used by the raw-integral routes below.
QuadratureSpec observable_quadrature_spec();

// Raw-integral routes. Each splits [-pi, pi] at the envelope kink and
// integrates the branch form of the shifted state on each arc:
//   alpha >= 0: d = phi - alpha + 2pi on [-pi, alpha-pi], d = phi - alpha on [alpha-pi, pi]
//   alpha <  0: d = phi - alpha on [-pi, alpha+pi], d = phi - alpha - 2pi on [alpha+pi, pi]
// with density A^2 e^{-d^2}.

/// int phi A^2 e^{-d^2}.
double expectation_Q_quadrature(const StateLabel& label,
                                const QuadratureSpec& spec = observable_quadrature_spec());
/// int (m + i d) A^2 e^{-d^2}; the imaginary part should vanish.
Complex expectation_P_quadrature(const StateLabel& label,
                                 const QuadratureSpec& spec = observable_quadrature_spec());
/// int [1 + (m + i d)^2] A^2 e^{-d^2}.
Complex expectation_P2_quadrature(const StateLabel& label,
                                  const QuadratureSpec& spec = observable_quadrature_spec());

/// Momentum moments from the Fourier spectrum of the sampled state:
/// sum n |a_n|^2 / sum |a_n|^2 and sum n^2 |a_n|^2 / sum |a_n|^2 over
/// |n| <= n_max. This is <psi|P^2|psi> in the quadratic-form sense, so the
/// envelope kink of the wrapped state contributes here.
struct FourierMoments {
    double p_mean = 0.0;
    double p2_mean = 0.0;
    double captured_norm = 0.0; // 2 pi sum |a_n|^2
};
FourierMoments momentum_moments_fourier(const StateLabel& label, std::size_t n_grid = 4096,
                                        int n_max = 64);

/// Outcome of the resolution-of-unity check.
struct ResolutionReport {
    int k_max = 0;
    double estimate = 0.0;            // sum of per_k_terms
    double defect = 0.0;              // |estimate - 2 pi|
    std::vector<double> per_k_terms;  // k = -k_max..k_max, each int |<k,alpha|eta>|^2 dalpha
    std::vector<double> convergence;  // partial estimate over |k| <= K, K = 0..k_max
    std::size_t n_grid = 0;
    double abs_tol = 0.0;
    double rel_tol = 0.0;
    int max_depth = 0;
    double err_est = 0.0;
    std::size_t panels = 0;
};

/// sum_{|k| <= k_max} int_{-pi}^{pi} |<k,alpha|eta>|^2 dalpha for a
/// normalized sampled eta. For each alpha node all 2 k_max + 1 overlaps come
/// from one Fourier sum of A g_alpha eta on the grid; the alpha integral runs
/// through the adaptive engine, split at the grid-aligned kinks of
/// g_alpha(phi_j). Throws DomainError if |norm^2 - 1| > 1e-9, k_max < 0 or
/// n_grid < 4 k_max; ToleranceNotMet from the integrator.
ResolutionReport resolution_check(const SampledWaveFunction& eta, int k_max,
                                  const QuadratureSpec& spec = {},
                                  kernels::Execution exec = kernels::Execution::parallel);

/// Named test vectors: "vacuum", "plane_wave_<N>" (e^{iN phi}/sqrt(2 pi)),
/// "two_peak" (equal superposition of |0,-pi/2> and |0,pi/2>). Normalized
/// on the grid. Throws DomainError for unknown names.
SampledWaveFunction resolution_test_vector(std::string_view name, std::size_t n_grid);

/// JSON object with k_max, estimate, defect, per_k_terms, convergence and
/// an "engine" block holding the integrator settings.
std::string to_json(const ResolutionReport& report);

} // namespace circle_cs
