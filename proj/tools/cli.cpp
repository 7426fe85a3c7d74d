#include "cli.hpp"

#include "circle_cs/errors.hpp"
#include "circle_cs/observables.hpp"
#include "circle_cs/overlaps.hpp"
#include "circle_cs/parallel.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace circle_cs::cli {

namespace {

using Json = nlohmann::ordered_json;

struct BadArguments : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

void require(bool ok, const std::string& message) {
    if (!ok) throw BadArguments(message);
}

double angle_or_throw(const std::string& text, const char* flag) {
    const auto value = parse_angle(text);
    require(value.has_value(), fmt::format("{}: cannot read '{}' as an angle", flag, text));
    return *value;
}

struct Common {
    std::string format;
    std::string out_path;
    std::optional<double> abs_tol;
    std::optional<double> rel_tol;

    void apply(QuadratureSpec& spec) const {
        if (abs_tol) spec.abs_tol = *abs_tol;
        if (rel_tol) spec.rel_tol = *rel_tol;
    }

    void validate() const {
        if (abs_tol) require(*abs_tol > 0.0 && std::isfinite(*abs_tol), "--abs-tol must be positive");
        if (rel_tol) require(*rel_tol > 0.0 && std::isfinite(*rel_tol), "--rel-tol must be positive");
    }
};

void add_common(CLI::App& sub, Common& c, const std::string& default_format) {
    c.format = default_format;
    sub.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub.add_option("--out", c.out_path, "Output file (stdout when omitted)");
    sub.add_option("--abs-tol", c.abs_tol, "Absolute quadrature tolerance");
    sub.add_option("--rel-tol", c.rel_tol, "Relative quadrature tolerance");
}

void emit(const Common& c, const std::string& data, std::ostream& out) {
    if (c.out_path.empty()) {
        out << data;
        out.flush();
        if (!out) throw IoFailure("failed writing to standard output");
        return;
    }
    std::ofstream file(c.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure(fmt::format("cannot open '{}' for writing", c.out_path));
    file << data;
    file.close();
    if (!file) throw IoFailure(fmt::format("failed writing '{}'", c.out_path));
}

// eval

struct EvalArgs {
    long m = 0;
    std::string alpha = "0";
    long long grid = 256;
    Common common;
};

std::string cmd_eval(const EvalArgs& a) {
    const double alpha = angle_or_throw(a.alpha, "--alpha");
    require(a.grid >= 16, "--grid must be at least 16");
    a.common.validate();

    const auto psi = sample_state({a.m, Angle(alpha)}, static_cast<std::size_t>(a.grid));
    if (a.common.format == "csv") return to_csv(psi);

    Json points = Json::array();
    for (std::size_t j = 0; j < psi.n_grid(); ++j) {
        points.push_back({{"phi", psi.phi(j)}, {"re", psi[j].real()}, {"im", psi[j].imag()}});
    }
    Json doc = {{"m", a.m}, {"alpha", alpha}, {"n_grid", psi.n_grid()}, {"points", std::move(points)}};
    return doc.dump(2) + "\n";
}

// overlap

struct OverlapArgs {
    long m = 0;
    std::string alpha = "0";
    std::string beta = "0";
    int dn_max = 0;
    Common common;
};

std::string cmd_overlap(const OverlapArgs& a) {
    const double alpha = angle_or_throw(a.alpha, "--alpha");
    const double beta = angle_or_throw(a.beta, "--beta");
    require(a.dn_max >= 0 && a.dn_max <= kAnalyticMaxDn,
            fmt::format("--dn-max must lie in [0, {}]", kAnalyticMaxDn));
    a.common.validate();
    QuadratureSpec spec;
    a.common.apply(spec);

    std::vector<std::pair<StateLabel, StateLabel>> pairs;
    for (long dn = -a.dn_max; dn <= a.dn_max; ++dn) {
        pairs.emplace_back(StateLabel{a.m, Angle(alpha)}, StateLabel{a.m + dn, Angle(beta)});
    }
    const auto cells = overlap_scan_parallel(pairs, spec);

    if (a.common.format == "csv") {
        std::string out = "m,alpha,n,beta,re,im,abs,method,err_est,quad_re,quad_im,quad_abs,quad_err_est,abs_diff\n";
        for (const auto& c : cells) {
            const Complex v = c.analytic.value;
            const Complex q = c.quadrature.value;
            out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", c.a.m, num(alpha), c.b.m, num(beta),
                               num(v.real()), num(v.imag()), num(std::abs(v)), to_string(c.analytic.method),
                               num(c.analytic.err_est), num(q.real()), num(q.imag()), num(std::abs(q)),
                               num(c.quadrature.err_est), num(std::abs(v - q)));
        }
        return out;
    }
    Json rows = Json::array();
    for (const auto& c : cells) {
        const Complex v = c.analytic.value;
        const Complex q = c.quadrature.value;
        rows.push_back({{"m", c.a.m}, {"alpha", alpha}, {"n", c.b.m}, {"beta", beta},
                        {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)},
                        {"method", std::string(to_string(c.analytic.method))}, {"err_est", c.analytic.err_est},
                        {"quad_re", q.real()}, {"quad_im", q.imag()}, {"quad_abs", std::abs(q)},
                        {"quad_err_est", c.quadrature.err_est}, {"abs_diff", std::abs(v - q)}});
    }
    return Json{{"rows", std::move(rows)}}.dump(2) + "\n";
}

// observables

struct ObservablesArgs {
    std::optional<long> m;
    long m_min = 0;
    long m_max = 0;
    std::optional<std::string> alpha;
    int alpha_steps = 8;
    Common common;
};

std::string cmd_observables(const ObservablesArgs& a) {
    const long m_lo = a.m ? *a.m : a.m_min;
    const long m_hi = a.m ? *a.m : a.m_max;
    require(m_lo <= m_hi, "--m-min must not exceed --m-max");
    require(m_hi - m_lo <= 10000, "m range too large");
    std::vector<double> alphas;
    if (a.alpha) {
        alphas.push_back(angle_or_throw(*a.alpha, "--alpha"));
    } else {
        require(a.alpha_steps >= 0 && a.alpha_steps <= 100000, "--alpha-steps must lie in [0, 100000]");
        for (int i = 0; i <= a.alpha_steps; ++i) {
            alphas.push_back(a.alpha_steps == 0 ? 0.0 : kPi * i / a.alpha_steps);
        }
    }
    a.common.validate();
    QuadratureSpec spec = observable_quadrature_spec();
    a.common.apply(spec);

    struct Row {
        long m;
        double alpha, q, q_oracle, p, p2, dispersion;
    };
    std::vector<Row> rows;
    for (long m = m_lo; m <= m_hi; ++m) {
        for (double alpha : alphas) {
            const StateLabel label{m, Angle(alpha)};
            rows.push_back({m, alpha, expectation_Q(label), expectation_Q_quadrature(label, spec),
                            expectation_P(label), expectation_P2(label), momentum_dispersion(label)});
        }
    }

    if (a.common.format == "csv") {
        std::string out = "m,alpha,q_mean,q_mean_oracle,p_mean,p2_mean,dispersion,q_deviation\n";
        for (const auto& r : rows) {
            out += fmt::format("{},{},{},{},{},{},{},{}\n", r.m, num(r.alpha), num(r.q), num(r.q_oracle), num(r.p),
                               num(r.p2), num(r.dispersion), num(r.q - r.alpha));
        }
        return out;
    }
    Json list = Json::array();
    for (const auto& r : rows) {
        list.push_back({{"m", r.m}, {"alpha", r.alpha}, {"q_mean", r.q}, {"q_mean_oracle", r.q_oracle},
                        {"p_mean", r.p}, {"p2_mean", r.p2}, {"dispersion", r.dispersion},
                        {"q_deviation", r.q - r.alpha}});
    }
    return Json{{"rows", std::move(list)}}.dump(2) + "\n";
}

// resolution

struct ResolutionArgs {
    int k_max = 30;
    std::string vector = "vacuum";
    long long grid = 512;
    Common common;
};

std::string cmd_resolution(const ResolutionArgs& a) {
    require(a.k_max >= 0, "--k-max must be nonnegative");
    require(a.grid >= 16, "--grid must be at least 16");
    require(a.grid >= 4LL * a.k_max, "--grid must be at least 4 * k_max");
    a.common.validate();
    QuadratureSpec spec;
    a.common.apply(spec);

    SampledWaveFunction eta = [&] {
        try {
            return resolution_test_vector(a.vector, static_cast<std::size_t>(a.grid));
        } catch (const DomainError&) {
            throw BadArguments(fmt::format("--vector: unknown test vector '{}'", a.vector));
        }
    }();
    const auto report = resolution_check(eta, a.k_max, spec);

    if (a.common.format == "json") return to_json(report) + "\n";
    std::string out = "k_max,estimate,defect\n";
    for (std::size_t k = 0; k < report.convergence.size(); ++k) {
        out += fmt::format("{},{},{}\n", k, num(report.convergence[k]), num(std::abs(report.convergence[k] - kTwoPi)));
    }
    return out;
}

} // namespace

std::optional<double> parse_angle(std::string_view text) {
    const auto number = [](std::string_view s) -> std::optional<double> {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
        return v;
    };
    if (text.empty()) return std::nullopt;

    double sign = 1.0;
    std::string_view s = text;
    if (s.front() == '-' || s.front() == '+') {
        sign = s.front() == '-' ? -1.0 : 1.0;
        s.remove_prefix(1);
    }
    if (s.empty() || s.front() == '-' || s.front() == '+') return std::nullopt;
    const auto pi_at = s.find("pi");
    double value = 0.0;
    if (pi_at == std::string_view::npos) {
        const auto v = number(s);
        if (!v) return std::nullopt;
        value = *v;
    } else {
        double coefficient = 1.0;
        if (pi_at > 0) {
            auto head = s.substr(0, pi_at);
            if (head.back() == '*') head.remove_suffix(1);
            const auto v = number(head);
            if (!v) return std::nullopt;
            coefficient = *v;
        }
        std::string_view tail = s.substr(pi_at + 2);
        double denominator = 1.0;
        if (!tail.empty()) {
            if (tail.front() != '/') return std::nullopt;
            const auto v = number(tail.substr(1));
            if (!v || *v == 0.0) return std::nullopt;
            denominator = *v;
        }
        value = coefficient * kPi / denominator;
    }
    value *= sign;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    apply_thread_cap_from_env();

    CLI::App app{"Coherent states on the circle: wave functions, overlaps, observables, resolution of unity"};
    app.name("circle-cs");
    app.require_subcommand(1, 1);

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Sample |m, alpha> on a uniform grid");
    eval_cmd->add_option("--m", eval.m, "Momentum index")->capture_default_str();
    eval_cmd->add_option("--alpha", eval.alpha, "Displacement angle (e.g. 0.5, pi/2)")->capture_default_str();
    eval_cmd->add_option("--grid", eval.grid, "Grid points")->capture_default_str();
    add_common(*eval_cmd, eval.common, "csv");

    OverlapArgs ov;
    auto* overlap_cmd = app.add_subcommand("overlap", "Overlaps <m,alpha|m+dn,beta> for |dn| <= dn-max");
    overlap_cmd->add_option("--m", ov.m, "Momentum index of the bra")->capture_default_str();
    overlap_cmd->add_option("--alpha", ov.alpha, "Angle of the bra")->capture_default_str();
    overlap_cmd->add_option("--beta", ov.beta, "Angle of the ket")->capture_default_str();
    overlap_cmd->add_option("--dn-max", ov.dn_max, "Largest |n - m|")->capture_default_str();
    add_common(*overlap_cmd, ov.common, "csv");

    ObservablesArgs obs;
    auto* obs_cmd = app.add_subcommand("observables", "Position and momentum moments over an (m, alpha) sweep");
    obs_cmd->add_option("--m", obs.m, "Single momentum index (overrides --m-min/--m-max)");
    obs_cmd->add_option("--m-min", obs.m_min, "Smallest m")->capture_default_str();
    obs_cmd->add_option("--m-max", obs.m_max, "Largest m")->capture_default_str();
    obs_cmd->add_option("--alpha", obs.alpha, "Single angle (overrides the sweep)");
    obs_cmd->add_option("--alpha-steps", obs.alpha_steps, "Sweep alpha = pi i / steps, i = 0..steps")
        ->capture_default_str();
    add_common(*obs_cmd, obs.common, "csv");

    ResolutionArgs res;
    auto* res_cmd = app.add_subcommand("resolution", "Resolution-of-unity check for a test vector");
    res_cmd->add_option("--k-max", res.k_max, "Largest |k| in the sum")->capture_default_str();
    res_cmd->add_option("--vector", res.vector, "vacuum, two_peak or plane_wave_N")->capture_default_str();
    res_cmd->add_option("--grid", res.grid, "Grid points of the test vector")->capture_default_str();
    add_common(*res_cmd, res.common, "json");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kBadArguments;
    }

    try {
        if (eval_cmd->parsed()) {
            emit(eval.common, cmd_eval(eval), out);
        } else if (overlap_cmd->parsed()) {
            emit(ov.common, cmd_overlap(ov), out);
        } else if (obs_cmd->parsed()) {
            emit(obs.common, cmd_observables(obs), out);
        } else {
            emit(res.common, cmd_resolution(res), out);
        }
    } catch (const BadArguments& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const ToleranceNotMet& e) {
        err << "error: " << e.what() << "\n";
        return kToleranceFailure;
    } catch (const IoFailure& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kSuccess;
}

} // namespace circle_cs::cli
