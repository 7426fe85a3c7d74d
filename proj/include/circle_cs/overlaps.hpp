#pragma once

#include "circle_cs/circle_states.hpp"
#include "circle_cs/kernels.hpp"
#include "circle_cs/quadrature.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace circle_cs {

enum class OverlapMethod { analytic, quadrature };

std::string_view to_string(OverlapMethod method);

/// <a|b> with the route that produced it. For normalized states
/// |value| <= 1 up to rounding.
struct OverlapResult {
    Complex value;
    OverlapMethod method = OverlapMethod::analytic;
    double err_est = 0.0;
};

/// Largest |n - m| evaluated in closed form; beyond it overlap() integrates.
inline constexpr long kAnalyticMaxDn = 16;

// Closed forms on the wedge 0 <= alpha <= beta <= pi, with dn = n - m. The
// inner product of |m,alpha> and |n,beta> is A^2 (I1 + I2):
//
//   I1 = int_{alpha-pi}^{beta-pi} e^{i dn phi} e^{-(phi-alpha)^2/2} e^{-(phi-beta+2pi)^2/2} dphi
//   I2 = int_{beta-pi}^{pi+alpha} e^{i dn phi} e^{-(phi-alpha)^2/2} e^{-(phi-beta)^2/2} dphi
//
// Completing the square, with L = (beta - alpha)/2 and
//   W(h, dn) = int_{-h}^{h} e^{i dn w - w^2} dw
//            = (sqrt(pi)/2) e^{-dn^2/4} [erf(h + i dn/2) + erf(h - i dn/2)],
// gives
//   I1 = e^{-(pi-L)^2} e^{i dn ((alpha+beta)/2 - pi)} W(L, dn)
//   I2 = e^{-L^2}      e^{i dn (alpha+beta)/2}        W(pi - L, dn).
// Both throw DomainError outside the wedge.
Complex overlap_I1(double alpha, double beta, long dn);
Complex overlap_I2(double alpha, double beta, long dn);

/// Factor multiplying I1 + I2 in the inner product: A^2.
double overlap_prefactor();

/// Analytic inner product <a|b> for arbitrary labels. The pair is rotated
/// so that a sits at alpha = 0, and conjugated when the relative
/// displacement is negative, landing on the wedge. Equal labels give
/// exactly 1. |n - m| > kAnalyticMaxDn falls back to overlap_quadrature.
OverlapResult overlap(const StateLabel& a, const StateLabel& b);

/// Ground truth: adaptive integration of conj(psi_a) psi_b over [-pi, pi]
/// with split points at the envelope kink of each state.
OverlapResult overlap_quadrature(const StateLabel& a, const StateLabel& b,
                                 const QuadratureSpec& spec = {});

/// One-point calibration of the prefactor of I1 + I2 against quadrature at
/// alpha = beta = 0, dn = 0, choosing between A and A^2.
struct PrefactorCalibration {
    double quadrature_value = 0.0; // <0,0|0,0> by quadrature
    double closed_form_sum = 0.0;  // I1 + I2 at (0, 0, 0)
    double residual_a = 0.0;       // |A (I1+I2) - quadrature|
    double residual_a2 = 0.0;      // |A^2 (I1+I2) - quadrature|
    double chosen = 0.0;
    bool is_a_squared = false;
};
PrefactorCalibration calibrate_prefactor(const QuadratureSpec& spec = {});

/// One row of an overlap scan: both routes for the same pair.
struct OverlapCell {
    StateLabel a;
    StateLabel b;
    OverlapResult analytic;
    OverlapResult quadrature;
};

std::vector<OverlapCell> overlap_scan_serial(std::span<const std::pair<StateLabel, StateLabel>> pairs,
                                             const QuadratureSpec& spec = {});
std::vector<OverlapCell> overlap_scan_parallel(std::span<const std::pair<StateLabel, StateLabel>> pairs,
                                               const QuadratureSpec& spec = {});

/// CSV header `m,alpha,n,beta,re,im,abs,method,err_est`, one row per result.
std::string overlap_table_csv(std::span<const std::pair<std::pair<StateLabel, StateLabel>, OverlapResult>> rows);

} // namespace circle_cs
