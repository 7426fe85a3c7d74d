#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace circle_cs {

/// Raised when an argument lies outside the domain an operation is certified for.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by the adaptive integrator when the subdivision budget runs out.
/// Carries the best available value and its error estimate.
class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(const std::string& what, std::complex<double> best_value, double err_est)
        : std::runtime_error(what), best_value_(best_value), err_est_(err_est) {}

    std::complex<double> best_value() const noexcept { return best_value_; }
    double err_est() const noexcept { return err_est_; }

private:
    std::complex<double> best_value_;
    double err_est_;
};

} // namespace circle_cs
