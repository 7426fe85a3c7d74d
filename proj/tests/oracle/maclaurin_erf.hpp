#pragma once

// Extended-precision Maclaurin series for erf, used as an independent
// reference in tests: sum_k (-1)^k z^(2k+1) / (k! (2k+1)) * 2/sqrt(pi).

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>

namespace oracle {

template <unsigned Digits>
std::complex<double> maclaurin_erf(std::complex<double> z) {
    using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
    const Real x = z.real();
    const Real y = z.imag();
    // -z^2
    const Real mz2_re = y * y - x * x;
    const Real mz2_im = -2 * x * y;
    Real p_re = x; // (-z^2)^k z / k!
    Real p_im = y;
    Real s_re = x;
    Real s_im = y;
    const Real cutoff = Real(1e-20);
    for (int k = 1; k < 100000; ++k) {
        const Real re = (p_re * mz2_re - p_im * mz2_im) / k;
        const Real im = (p_re * mz2_im + p_im * mz2_re) / k;
        p_re = re;
        p_im = im;
        const Real t_re = p_re / (2 * k + 1);
        const Real t_im = p_im / (2 * k + 1);
        s_re += t_re;
        s_im += t_im;
        if (k > 4 && abs(t_re) + abs(t_im) < cutoff * (abs(s_re) + abs(s_im)) &&
            abs(t_re) + abs(t_im) < cutoff) {
            break;
        }
    }
    const Real scale = 2 / sqrt(boost::math::constants::pi<Real>());
    return {static_cast<double>(s_re * scale), static_cast<double>(s_im * scale)};
}

} // namespace oracle
