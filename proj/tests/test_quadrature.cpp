#include "circle_cs/circle_states.hpp"
#include "circle_cs/errors.hpp"
#include "circle_cs/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace circle_cs;

TEST_CASE("integrate reference integrals") {
    const auto gauss = integrate([](double x) { return Complex(std::exp(-x * x)); }, -kPi, kPi);
    CHECK(std::abs(gauss.value - Complex(std::sqrt(kPi) * std::erf(kPi), 0.0)) < 1e-13);
    CHECK(gauss.err_est <= 1e-12 * std::abs(gauss.value));

    const auto one = integrate([](double) { return Complex(1.0); }, 0.0, 2.0);
    CHECK(std::abs(one.value - 2.0) <= 1e-15);

    const auto wave = integrate([](double x) { return std::polar(1.0, x); }, -kPi, kPi);
    CHECK(std::abs(wave.value) <= 1e-13);
}

TEST_CASE("integrate is additive and linear") {
    const auto f = [](double x) { return Complex(std::cos(3.0 * x) * std::exp(-x * x), std::sin(x)); };
    const auto g = [](double x) { return Complex(x * x, -std::exp(0.5 * x)); };
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> cut(-2.9, 2.9);
    for (int i = 0; i < 20; ++i) {
        const double c = cut(rng);
        const auto whole = integrate(f, -3.0, 3.0);
        const auto left = integrate(f, -3.0, c);
        const auto right = integrate(f, c, 3.0);
        REQUIRE(std::abs(whole.value - (left.value + right.value)) <=
                whole.err_est + left.err_est + right.err_est + 1e-15);
    }
    const Complex s(0.7, -1.3);
    const Complex t(-2.0, 0.25);
    const auto combined = integrate([&](double x) { return s * f(x) + t * g(x); }, -1.0, 2.5);
    const Complex separate = s * integrate(f, -1.0, 2.5).value + t * integrate(g, -1.0, 2.5).value;
    CHECK(std::abs(combined.value - separate) < 1e-11);
}

TEST_CASE("integrate commutes with conjugation exactly") {
    const auto f = [](double x) { return std::polar(std::exp(-0.5 * x * x), 2.5 * x); };
    const auto conj_f = [&](double x) { return std::conj(f(x)); };
    QuadratureSpec spec;
    spec.split_points = {-1.0, 0.4};
    const auto a = integrate(f, -kPi, kPi, spec);
    const auto b = integrate(conj_f, -kPi, kPi, spec);
    CHECK(b.value.real() == a.value.real());
    CHECK(b.value.imag() == -a.value.imag());
    CHECK(b.err_est == a.err_est);
}

TEST_CASE("split points at a kink") {
    const auto kink = [](double x) { return Complex(std::abs(x - 0.3)); };
    const double exact = 0.5 * (1.3 * 1.3 + 0.7 * 0.7);
    QuadratureSpec spec;
    spec.split_points = {0.3};
    const auto split = integrate_vector(
        [&](double x, std::span<double> out) { out[0] = kink(x).real(); }, 1, -1.0, 1.0, spec);
    CHECK(split.panels == 2);
    CHECK(std::abs(split.value[0] - exact) < 1e-15);

    // Without the split point the engine bisects its way in and needs far more panels.
    const auto blind = integrate_vector(
        [&](double x, std::span<double> out) { out[0] = kink(x).real(); }, 1, -1.0, 1.0);
    CHECK(blind.panels > 10);
    CHECK(std::abs(blind.value[0] - exact) < 1e-12);
}

TEST_CASE("integrate reports an exhausted budget") {
    QuadratureSpec spec;
    spec.max_depth = 3;
    const auto kink = [](double x) { return Complex(std::abs(x - 0.3), 0.0); };
    try {
        (void)integrate(kink, -1.0, 1.0, spec);
        FAIL("expected ToleranceNotMet");
    } catch (const ToleranceNotMet& e) {
        CHECK(std::abs(e.best_value().real() - 0.5 * (1.3 * 1.3 + 0.7 * 0.7)) < 1e-3);
        CHECK(e.err_est() > spec.abs_tol);
    }
}

TEST_CASE("integrate validates its inputs") {
    const auto f = [](double) { return Complex(1.0); };
    CHECK_THROWS_AS(integrate(f, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(integrate(f, 2.0, 1.0), DomainError);
    QuadratureSpec spec;
    spec.split_points = {0.5, 0.2};
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, spec), DomainError);
    spec.split_points = {1.0};
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, spec), DomainError);
    spec.split_points = {};
    spec.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, spec), DomainError);
    spec.abs_tol = 1e-12;
    spec.max_depth = 0;
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, spec), DomainError);

    CHECK(interior_split_points(-1.0, 1.0, {0.5, -1.0, 0.5, -0.2, 1.0, 3.0}) ==
          std::vector<double>{-0.2, 0.5});
}

TEST_CASE("parallel and serial panel evaluation agree bit for bit") {
    const VectorIntegrand f = [](double x, std::span<double> out) {
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c] = std::exp(-x * x) * std::cos(static_cast<double>(c) * x) + std::abs(x - 0.25);
        }
    };
    QuadratureSpec spec;
    spec.split_points = {-2.0, -1.0, 0.0, 1.0, 2.0};
    const auto serial = integrate_vector(f, 7, -kPi, kPi, spec, kernels::Execution::serial);
    const auto parallel = integrate_vector(f, 7, -kPi, kPi, spec, kernels::Execution::parallel);
    CHECK(serial.value == parallel.value);
    CHECK(serial.err_est == parallel.err_est);
    CHECK(serial.panels == parallel.panels);
}
