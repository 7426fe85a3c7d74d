#include "circle_cs/errors.hpp"
#include "circle_cs/observables.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>

using namespace circle_cs;

namespace {

const double kA = normalization_constant();
const double kKinkTerm = kA * kA * kPi * std::exp(-kPi * kPi);

StateLabel label(long m, double alpha) { return {m, Angle(alpha)}; }

// Position mean written out for alpha >= 0: the arc [-pi, -pi + alpha] uses
// the copy of the Gaussian centred at alpha - 2 pi.
double raw_position_mean(double alpha) {
    QuadratureSpec spec = observable_quadrature_spec();
    double total = 0.0;
    if (alpha > 0.0) {
        total += integrate([&](double phi) {
            const double u = phi - alpha + kTwoPi;
            return Complex(phi * std::exp(-u * u));
        }, -kPi, -kPi + alpha, spec).value.real();
    }
    total += integrate([&](double phi) {
        const double u = phi - alpha;
        return Complex(phi * std::exp(-u * u));
    }, -kPi + alpha, kPi, spec).value.real();
    return kA * kA * total;
}

} // namespace

TEST_CASE("position mean") {
    for (long m = -3; m <= 3; ++m) {
        CHECK(expectation_Q(label(m, 0.0)) == 0.0);
        CHECK(std::abs(expectation_Q(label(m, kPi))) < 1e-11);
    }
    const double half = expectation_Q(label(0, kPi / 2));
    CHECK(std::abs(half - raw_position_mean(kPi / 2)) < 1e-11);
    CHECK(std::abs(half - (kPi / 2 - kA * kA * std::pow(kPi, 1.5) * (std::erf(kPi) - std::erf(kPi / 2)))) < 1e-14);

    // pi - A^2 pi^{3/2} erf(pi) vanishes identically
    CHECK(std::abs(kPi - kA * kA * std::pow(kPi, 1.5) * erf_real(kPi)) < 1e-14);

    for (int i = 0; i <= 8; ++i) {
        const double alpha = kPi * i / 8.0;
        const double q = expectation_Q(label(0, alpha));
        REQUIRE(std::abs(q - raw_position_mean(alpha)) < 1e-11);
        REQUIRE(std::abs(q - expectation_Q_quadrature(label(0, alpha))) < 1e-11);
        REQUIRE(std::abs(q) <= kPi);
        if (i < 8) REQUIRE(std::abs(expectation_Q(label(0, -alpha)) + q) < 1e-12);
        for (long m = -5; m <= 5; ++m) {
            REQUIRE(expectation_Q(label(m, alpha)) == q);
            REQUIRE(std::abs(expectation_Q_quadrature(label(m, alpha)) - q) < 1e-11);
        }
    }
    // negative displacements through the left-borrowing branch
    for (double alpha : {-0.3, -1.2, -2.9}) {
        REQUIRE(std::abs(expectation_Q(label(1, alpha)) - expectation_Q_quadrature(label(1, alpha))) < 1e-11);
    }
}

TEST_CASE("momentum mean") {
    CHECK(expectation_P(label(3, 0.5)) == 3.0);
    CHECK(expectation_P(label(0, kPi / 3)) == 0.0);
    CHECK(expectation_P(label(-2, 0.9)) == -2.0);
    for (long m = -3; m <= 3; ++m) {
        for (int i = 0; i <= 8; ++i) {
            const StateLabel l = label(m, kPi * i / 8.0);
            const Complex q = expectation_P_quadrature(l);
            REQUIRE(std::abs(q.real() - static_cast<double>(m)) < 1e-11);
            REQUIRE(std::abs(q.imag()) < 1e-11);
        }
    }
}

TEST_CASE("momentum second moment") {
    CHECK(expectation_P2(label(0, 1.0)) == doctest::Approx(0.5000917).epsilon(1e-7));
    CHECK(std::abs(expectation_P2(label(0, 0.0)) - 0.50009167777431339) < 1e-15);
    CHECK(expectation_P2(label(3, 0.7)) == 9.0 + expectation_P2(label(0, 0.7)));
    CHECK(expectation_P2(label(2, 0.1)) == expectation_P2(label(2, -2.4)));
    for (long m = -3; m <= 3; ++m) {
        for (int i = 0; i <= 8; ++i) {
            const StateLabel l = label(m, kPi * i / 8.0);
            const Complex q = expectation_P2_quadrature(l);
            REQUIRE(std::abs(q.real() - expectation_P2(l)) < 1e-11);
            REQUIRE(std::abs(q.imag()) < 1e-11);
        }
    }
}

TEST_CASE("Fourier moments see the envelope kink") {
    // Sum n^2 |a_n|^2 is the quadratic form |P psi|^2, which equals
    // m^2 + 1/2 - A^2 pi e^{-pi^2}; the pointwise second derivative omits
    // the kink at the antipode of alpha and gives + instead of -.
    for (const StateLabel l : {label(0, 0.0), label(3, 0.7), label(-2, -1.9)}) {
        const double m = static_cast<double>(l.m);
        const auto moments = momentum_moments_fourier(l, 4096, 64);
        CHECK(std::abs(moments.p_mean - m) < 1e-7);
        const double quadratic_form = m * m + 0.5 - kKinkTerm;
        // truncation above |n| = 64 removes roughly J^2 / (64 pi), J the slope jump
        const double slope_jump = kTwoPi * kA * std::exp(-0.5 * kPi * kPi);
        const double tail = slope_jump * slope_jump / (64.0 * kPi);
        CHECK(std::abs(moments.p2_mean - (quadratic_form - tail)) < 1e-6);
        CHECK(std::abs(moments.p2_mean - expectation_P2(l)) > 1e-4);
    }
    const auto fine = momentum_moments_fourier(label(0, 0.0), 16384, 2048);
    CHECK(std::abs(fine.p2_mean - (0.5 - kKinkTerm)) < 5e-7);
}

TEST_CASE("momentum dispersion") {
    CHECK(std::abs(momentum_dispersion(label(0, 0.0)) - 0.5000917) < 1e-6);
    CHECK(momentum_dispersion(label(0, 0.0)) == momentum_dispersion(label(7, kPi / 2)));
    CHECK(momentum_dispersion(label(-4, 2.0)) > 0.5);
    const StateLabel l = label(5, 1.3);
    CHECK(std::abs(expectation_P2(l) - expectation_P(l) * expectation_P(l) - momentum_dispersion(l)) < 1e-14);
}

TEST_CASE("resolution of unity") {
    const auto vac = resolution_test_vector("vacuum", 512);
    const auto report = resolution_check(vac, 30);
    CHECK(report.defect <= 1e-6);
    CHECK(report.per_k_terms.size() == 61);
    CHECK(report.convergence.size() == 31);
    CHECK(report.convergence.back() == report.estimate);
    for (double t : report.per_k_terms) REQUIRE(t >= 0.0);
    for (std::size_t k = 1; k < report.convergence.size(); ++k) {
        REQUIRE(report.convergence[k] >= report.convergence[k - 1]);
    }

    const auto wave = resolution_check(resolution_test_vector("plane_wave_5", 512), 40);
    CHECK(wave.defect <= 1e-6);
    const auto dominant = std::max_element(wave.per_k_terms.begin(), wave.per_k_terms.end());
    CHECK(dominant - wave.per_k_terms.begin() - 40 == 5);

    const auto truncated = resolution_check(vac, 2);
    CHECK(truncated.estimate < kTwoPi);
    CHECK(std::abs(truncated.estimate - report.convergence[2]) < 1e-12);

    const auto only_zero = resolution_check(vac, 0);
    CHECK(only_zero.per_k_terms.size() == 1);
    CHECK(only_zero.estimate == only_zero.per_k_terms[0]);
}

TEST_CASE("resolution_check estimate grows with k_max") {
    const auto eta = resolution_test_vector("two_peak", 256);
    double previous = 0.0;
    for (int k = 0; k <= 12; k += 3) {
        const double estimate = resolution_check(eta, k).estimate;
        REQUIRE(estimate >= previous);
        previous = estimate;
    }
}

TEST_CASE("resolution_check preconditions") {
    const auto vac = resolution_test_vector("vacuum", 128);
    CHECK_THROWS_AS(resolution_check(vac, -1), DomainError);
    CHECK_THROWS_AS(resolution_check(vac, 33), DomainError);
    std::vector<Complex> scaled(vac.amplitudes().begin(), vac.amplitudes().end());
    for (auto& a : scaled) a *= 1.001;
    CHECK_THROWS_AS(resolution_check(SampledWaveFunction(scaled), 4), DomainError);

    CHECK_THROWS_AS(resolution_test_vector("gaussian", 64), DomainError);
    CHECK_THROWS_AS(resolution_test_vector("plane_wave_", 64), DomainError);
    CHECK_THROWS_AS(resolution_test_vector("plane_wave_x", 64), DomainError);
    CHECK(std::abs(resolution_test_vector("plane_wave_-3", 64).norm2() - 1.0) < 1e-14);
}

TEST_CASE("resolution_check serial and parallel agree bit for bit") {
    const auto eta = resolution_test_vector("two_peak", 128);
    const auto serial = resolution_check(eta, 8, {}, kernels::Execution::serial);
    const auto parallel = resolution_check(eta, 8, {}, kernels::Execution::parallel);
    CHECK(serial.per_k_terms == parallel.per_k_terms);
    CHECK(serial.estimate == parallel.estimate);
}

TEST_CASE("ResolutionReport JSON") {
    const auto report = resolution_check(resolution_test_vector("vacuum", 128), 4);
    const auto j = nlohmann::json::parse(to_json(report));
    CHECK(j["k_max"] == 4);
    CHECK(j["estimate"].get<double>() == report.estimate);
    CHECK(j["defect"].get<double>() == report.defect);
    CHECK(j["per_k_terms"].size() == 9);
    CHECK(j["per_k_terms"][4].get<double>() == report.per_k_terms[4]);
    CHECK(j["convergence"].size() == 5);
    CHECK(j["engine"]["abs_tol"].get<double>() == 1e-12);
    CHECK(j["engine"]["rel_tol"].get<double>() == 1e-12);
}
