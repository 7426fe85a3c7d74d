#pragma once

#include <complex>

namespace circle_cs {

using Complex = std::complex<double>;

/// Half-width of the square |Re z|, |Im z| <= kErfBoxHalfWidth on which
/// erf_complex is certified.
inline constexpr double kErfBoxHalfWidth = 12.0;

/// Error function of a complex argument.
///
/// The value is computed on the closed first quadrant and mapped to the other
/// quadrants by the odd and Schwarz-reflection symmetries, so
/// erf_complex(-z) == -erf_complex(z) and erf_complex(conj(z)) ==
/// conj(erf_complex(z)) hold bit for bit. Inside |z| <= 3, and near the
/// imaginary axis (Re z <= 2), the Maclaurin series is summed in long double.
/// Elsewhere erfc is evaluated by its Laplace continued fraction and
/// erf = 1 - erfc. Real arguments return an imaginary part of exactly zero.
///
/// Throws DomainError for non-finite input or input outside the certified box.
Complex erf_complex(Complex z);

/// erf on the real line, routed through erf_complex.
double erf_real(double x);

} // namespace circle_cs
