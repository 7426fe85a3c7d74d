#include "circle_cs/special_fn.hpp"

#include "circle_cs/errors.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace circle_cs {

namespace {

using LComplex = std::complex<long double>;

constexpr long double kTwoOverSqrtPi = 1.128379167095512573896158903121545172L;
constexpr long double kInvSqrtPi = 0.564189583547756286948079451560772586L;

// sum_k (-1)^k z^(2k+1) / (k! (2k+1)), scaled by 2/sqrt(pi).
LComplex erf_maclaurin(LComplex z) {
    const LComplex minus_z2 = -z * z;
    LComplex power = z; // (-z^2)^k z / k!
    LComplex sum = z;
    for (int k = 1; k < 4000; ++k) {
        power *= minus_z2 / static_cast<long double>(k);
        const LComplex term = power / static_cast<long double>(2 * k + 1);
        sum += term;
        if (std::abs(term) <= 1e-21L * std::abs(sum)) {
            break;
        }
    }
    return kTwoOverSqrtPi * sum;
}

// erfc(z) = exp(-z^2)/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
// valid for Re z > 0, evaluated with the modified Lentz method.
LComplex erfc_continued_fraction(long double x, long double y) {
    const LComplex z(x, y);
    constexpr long double tiny = 1e-300L;
    LComplex f = z;
    LComplex c = f;
    LComplex d = 0.0L;
    for (int k = 1; k < 20000; ++k) {
        const long double a = 0.5L * static_cast<long double>(k);
        d = z + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = z + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0L / d;
        const LComplex delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0L) < 1e-20L) {
            break;
        }
    }
    // exp(-z^2) with z^2 = x^2 - y^2 + 2ixy.
    const long double re = (y - x) * (y + x);
    const long double im = -2.0L * x * y;
    const LComplex expz2 = std::exp(re) * LComplex(std::cos(im), std::sin(im));
    return kInvSqrtPi * expz2 / f;
}

// First closed quadrant: x >= 0, y >= 0.
Complex erf_first_quadrant(double x, double y) {
    const long double lx = x;
    const long double ly = y;
    LComplex value;
    if (lx * lx + ly * ly <= 9.0L || lx <= 2.0L) {
        value = erf_maclaurin(LComplex(lx, ly));
    } else {
        value = 1.0L - erfc_continued_fraction(lx, ly);
    }
    if (y == 0.0) {
        return {static_cast<double>(value.real()), 0.0};
    }
    return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

} // namespace

Complex erf_complex(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("erf_complex: non-finite argument");
    }
    if (std::abs(x) > kErfBoxHalfWidth || std::abs(y) > kErfBoxHalfWidth) {
        throw DomainError("erf_complex: argument (" + std::to_string(x) + ", " + std::to_string(y) +
                          ") outside the certified box");
    }
    const bool neg_x = std::signbit(x);
    const bool neg_y = std::signbit(y);
    const Complex r = erf_first_quadrant(std::abs(x), std::abs(y));
    // erf(-z) = -erf(z), erf(conj z) = conj erf(z)
    if (neg_x && neg_y) return -r;
    if (neg_x) return -std::conj(r);
    if (neg_y) return std::conj(r);
    return r;
}

double erf_real(double x) { return erf_complex({x, 0.0}).real(); }

} // namespace circle_cs
