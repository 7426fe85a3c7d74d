#pragma once

#include "circle_cs/kernels.hpp"
#include "circle_cs/special_fn.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace circle_cs {

/// Controls for the adaptive integrator.
///
/// split_points are the known locations where the integrand (or one of its
/// low derivatives) is not smooth. The integrator never looks for them on
/// its own; each panel between consecutive split points is refined
/// independently.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 40;
    std::vector<double> split_points; // sorted, strictly inside (a, b)

    /// Throws DomainError when a tolerance is not positive, max_depth < 1,
    /// or split_points are unsorted or not strictly inside (a, b).
    void validate(double a, double b) const;
};

/// Sorted, deduplicated subset of `candidates` strictly inside (a, b).
std::vector<double> interior_split_points(double a, double b, std::vector<double> candidates);

struct QuadratureResult {
    Complex value;
    double err_est = 0.0;
};

struct VectorQuadratureResult {
    std::vector<double> value;
    double err_est = 0.0;
    std::size_t panels = 0;
};

using ScalarIntegrand = std::function<Complex(double)>;
/// Writes the integrand's components at x into `out`. Must be safe to call
/// concurrently when integrated with Execution::parallel.
using VectorIntegrand = std::function<void(double x, std::span<double> out)>;

/// Adaptive 7/15-point Gauss-Kronrod integration of a complex integrand
/// over [a, b]. Returns once err_est <= max(abs_tol, rel_tol |value|);
/// throws ToleranceNotMet when a panel needing refinement is already at
/// max_depth, DomainError for a >= b or a malformed spec.
QuadratureResult integrate(const ScalarIntegrand& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Same engine for an integrand with `dim` real components. The error is
/// the Euclidean norm of the Kronrod-Gauss difference. With
/// Execution::parallel the panels of each refinement round are evaluated
/// concurrently; partial sums are always combined in interval order, so
/// the result does not depend on scheduling.
VectorQuadratureResult integrate_vector(const VectorIntegrand& f, std::size_t dim, double a,
                                        double b, const QuadratureSpec& spec = {},
                                        kernels::Execution exec = kernels::Execution::serial);

} // namespace circle_cs
