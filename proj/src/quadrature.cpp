#include "circle_cs/quadrature.hpp"

#include "circle_cs/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace circle_cs {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kMaxPanels = 1u << 22;

struct Panel {
    double a = 0.0;
    double b = 0.0;
    int depth = 0;
    std::vector<double> value; // Kronrod estimate
    double err = 0.0;
};

void evaluate_panel(const VectorIntegrand& f, std::size_t dim, Panel& p) {
    const double centre = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    std::vector<double> fx(dim);
    std::vector<double> kronrod(dim, 0.0);
    std::vector<double> gauss(dim, 0.0);

    f(centre, fx);
    for (std::size_t c = 0; c < dim; ++c) {
        kronrod[c] = kWgk[7] * fx[c];
        gauss[c] = kWg[3] * fx[c];
    }
    std::vector<double> fl(dim);
    std::vector<double> fr(dim);
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        f(centre - dx, fl);
        f(centre + dx, fr);
        for (std::size_t c = 0; c < dim; ++c) {
            const double pair = fl[c] + fr[c];
            kronrod[c] += kWgk[i] * pair;
            if (i % 2 == 1) gauss[c] += kWg[i / 2] * pair;
        }
    }
    double err2 = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
        kronrod[c] *= half;
        gauss[c] *= half;
        const double diff = kronrod[c] - gauss[c];
        err2 += diff * diff;
    }
    p.value = std::move(kronrod);
    p.err = std::sqrt(err2);
}

void evaluate_batch(const VectorIntegrand& f, std::size_t dim, std::vector<Panel>& panels,
                    kernels::Execution exec) {
    const auto n = static_cast<std::ptrdiff_t>(panels.size());
    if (exec == kernels::Execution::parallel && n > 1) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            evaluate_panel(f, dim, panels[static_cast<std::size_t>(i)]);
        }
    } else {
        for (auto& p : panels) evaluate_panel(f, dim, p);
    }
}

double euclidean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

void QuadratureSpec::validate(double a, double b) const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw DomainError("QuadratureSpec: tolerances must be positive");
    }
    if (max_depth < 1) {
        throw DomainError("QuadratureSpec: max_depth must be at least 1");
    }
    double prev = a;
    for (double s : split_points) {
        if (!(s > prev) || !(s < b)) {
            throw DomainError("QuadratureSpec: split points must be sorted and strictly inside (a, b)");
        }
        prev = s;
    }
}

std::vector<double> interior_split_points(double a, double b, std::vector<double> candidates) {
    std::erase_if(candidates, [&](double s) { return !(s > a && s < b); });
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    return candidates;
}

VectorQuadratureResult integrate_vector(const VectorIntegrand& f, std::size_t dim, double a,
                                        double b, const QuadratureSpec& spec,
                                        kernels::Execution exec) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw DomainError("integrate: need finite a < b");
    }
    if (dim == 0) {
        throw DomainError("integrate: integrand needs at least one component");
    }
    spec.validate(a, b);

    std::vector<Panel> panels;
    {
        double left = a;
        for (double s : spec.split_points) {
            panels.push_back(Panel{left, s, 0, {}, 0.0});
            left = s;
        }
        panels.push_back(Panel{left, b, 0, {}, 0.0});
    }
    evaluate_batch(f, dim, panels, exec);

    const double length = b - a;
    std::vector<double> total(dim);
    for (;;) {
        std::fill(total.begin(), total.end(), 0.0);
        double err = 0.0;
        for (const auto& p : panels) {
            for (std::size_t c = 0; c < dim; ++c) total[c] += p.value[c];
            err += p.err;
        }
        const double tol = std::max(spec.abs_tol, spec.rel_tol * euclidean(total));
        if (err <= tol) {
            return {total, err, panels.size()};
        }

        // Refine every panel whose error exceeds its length-proportional share.
        // At least one panel qualifies whenever the total exceeds tol.
        std::vector<Panel> next;
        std::vector<Panel> fresh;
        next.reserve(panels.size() * 2);
        std::vector<std::size_t> fresh_slots;
        for (auto& p : panels) {
            if (p.err <= tol * (p.b - p.a) / length) {
                next.push_back(std::move(p));
                continue;
            }
            const double mid = 0.5 * (p.a + p.b);
            if (p.depth >= spec.max_depth || !(mid > p.a && mid < p.b) ||
                next.size() + 2 > kMaxPanels) {
                double sum = 0.0;
                for (double v : total) sum += v;
                const Complex best = dim == 2 ? Complex(total[0], total[1]) : Complex(sum, 0.0);
                throw ToleranceNotMet(
                    fmt::format("integrate: tolerance not met (err_est {:.3g}, tol {:.3g})", err, tol), best, err);
            }
            fresh_slots.push_back(next.size());
            next.push_back(Panel{p.a, mid, p.depth + 1, {}, 0.0});
            fresh_slots.push_back(next.size());
            next.push_back(Panel{mid, p.b, p.depth + 1, {}, 0.0});
        }
        fresh.reserve(fresh_slots.size());
        for (std::size_t slot : fresh_slots) fresh.push_back(next[slot]);
        evaluate_batch(f, dim, fresh, exec);
        for (std::size_t i = 0; i < fresh_slots.size(); ++i) next[fresh_slots[i]] = std::move(fresh[i]);
        panels = std::move(next);
    }
}

QuadratureResult integrate(const ScalarIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    const VectorIntegrand split = [&f](double x, std::span<double> out) {
        const Complex v = f(x);
        out[0] = v.real();
        out[1] = v.imag();
    };
    const auto r = integrate_vector(split, 2, a, b, spec);
    return {Complex(r.value[0], r.value[1]), r.err_est};
}

} // namespace circle_cs
