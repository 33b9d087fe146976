#include "balfilt/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "balfilt/parallel.hpp"

namespace balfilt::flow {

namespace {

constexpr double kExpCap = 700.0;  // exp() overflows just above 709

double dot_d(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> mat_apply(const std::vector<double>& m, const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
    return out;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Right-hand side of dh/dτ = −e^τ·∇f(h). Exponents are combined before
// exponentiation so the tight characters keep O(1) terms along the
// asymptote (their relative gradient stays order one, while a converged
// polystable trajectory drives it to the noise floor). Below that floor the
// value is clamped to zero; otherwise the stiff contraction around a
// minimum would pin the explicit stepper at its stability limit while the
// error controller holds the state at tolerance-level noise.
std::vector<double> tau_rhs(const FlowProblem& p, double tau, const std::vector<double>& h) {
    const std::size_t n = p.dim;
    std::vector<double> w(n, 0.0);
    double scale = 0.0;
    for (const auto& chi : p.characters) {
        double e = tau + dot_d(h, chi);
        if (e > kExpCap) throw flow_error("flow: character term overflow", tau);
        double t = std::exp(e);
        for (std::size_t i = 0; i < n; ++i) w[i] += t * chi[i];
        scale += t;
    }
    bool has_pol = inf_norm(p.polarisation) > 0.0;
    if (has_pol) {
        if (tau > kExpCap) throw flow_error("flow: polarisation term overflow", tau);
        double et = std::exp(tau);
        for (std::size_t i = 0; i < n; ++i) w[i] -= et * p.polarisation[i];
        scale += et * inf_norm(p.polarisation);
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double floor = 64.0 * eps + p.atol + p.rtol * (1.0 + inf_norm(h));
    if (inf_norm(w) <= floor * scale) return std::vector<double>(n, 0.0);
    std::vector<double> out = mat_apply(p.gram_inverse, w);
    for (double& x : out) x = -x;
    return out;
}

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

std::vector<double> axpy(const std::vector<double>& base,
                         std::initializer_list<std::pair<double, const std::vector<double>*>> terms,
                         double h) {
    std::vector<double> out = base;
    for (auto& [c, v] : terms)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*v)[i];
    return out;
}

}  // namespace

FlowProblem FlowProblem::from_state(const PolarisedState& s, std::vector<double> start) {
    if (!is_semistable(s))
        throw input_error("flow: state is not semistable; the potential is unbounded below");
    if (start.size() != s.rank()) throw input_error("flow: start point length != rank");
    FlowProblem p;
    p.dim = s.rank();
    for (const QVec& chi : s.characters()) {
        std::vector<double> c(p.dim);
        for (std::size_t i = 0; i < p.dim; ++i) c[i] = to_double(chi[i]);
        p.characters.push_back(std::move(c));
    }
    p.polarisation.resize(p.dim);
    for (std::size_t i = 0; i < p.dim; ++i) p.polarisation[i] = to_double(s.polarisation()[i]);
    p.gram.assign(p.dim, std::vector<double>(p.dim));
    p.gram_inverse.assign(p.dim * p.dim, 0.0);
    // The inverse is computed exactly and converted once.
    for (std::size_t j = 0; j < p.dim; ++j) {
        QVec e = zero_vector(p.dim);
        e[j] = 1;
        QVec col = *solve_linear(s.metric().gram(), e);
        for (std::size_t i = 0; i < p.dim; ++i) {
            p.gram[i][j] = to_double(s.metric().gram().at(i, j));
            p.gram_inverse[i * p.dim + j] = to_double(col[i]);
        }
    }
    p.start = std::move(start);
    return p;
}

double potential(const FlowProblem& p, const std::vector<double>& xi) {
    if (xi.size() != p.dim) throw input_error("potential: length mismatch");
    double m = 0.0;
    std::vector<double> exps;
    exps.reserve(p.characters.size());
    for (const auto& chi : p.characters) {
        exps.push_back(dot_d(xi, chi));
        m = std::max(m, exps.back());
    }
    double sum = 0.0;
    for (double e : exps) sum += std::exp(e - m);
    double value = std::exp(m) * sum;  // overflows only if the true value does
    return value - dot_d(xi, p.polarisation);
}

std::vector<double> gradient(const FlowProblem& p, const std::vector<double>& xi) {
    if (xi.size() != p.dim) throw input_error("gradient: length mismatch");
    std::vector<double> w(p.dim, 0.0);
    for (const auto& chi : p.characters) {
        double t = std::exp(dot_d(xi, chi));
        for (std::size_t i = 0; i < p.dim; ++i) w[i] += t * chi[i];
    }
    for (std::size_t i = 0; i < p.dim; ++i) w[i] -= p.polarisation[i];
    return mat_apply(p.gram_inverse, w);
}

FlowResult integrate(const FlowProblem& p) {
    if (!(p.tau_max > p.tau_min)) throw input_error("flow: need tau_max > tau_min");
    if (!(p.rtol > 0.0) || !(p.atol > 0.0)) throw input_error("flow: tolerances must be positive");
    const double range = p.tau_max - p.tau_min;
    const double max_step = std::min(2.0, range / 100.0);
    const double min_step = range * 1e-14;

    FlowResult out;
    double tau = p.tau_min;
    std::vector<double> h = p.start;
    out.tau.push_back(tau);
    out.trajectory.push_back(h);

    double step = std::min(1e-3, max_step);
    std::vector<double> k1 = tau_rhs(p, tau, h);
    const std::size_t step_budget = 5'000'000;
    std::size_t steps_taken = 0;
    while (tau < p.tau_max) {
        if (++steps_taken > step_budget) throw flow_error("flow: step budget exhausted", tau);
        step = std::min(step, p.tau_max - tau);
        auto k2v = tau_rhs(p, tau + step * 1.0 / 5, axpy(h, {{A21, &k1}}, step));
        auto k3v = tau_rhs(p, tau + step * 3.0 / 10, axpy(h, {{A31, &k1}, {A32, &k2v}}, step));
        auto k4v = tau_rhs(p, tau + step * 4.0 / 5,
                           axpy(h, {{A41, &k1}, {A42, &k2v}, {A43, &k3v}}, step));
        auto k5v = tau_rhs(p, tau + step * 8.0 / 9,
                           axpy(h, {{A51, &k1}, {A52, &k2v}, {A53, &k3v}, {A54, &k4v}}, step));
        auto k6v = tau_rhs(p, tau + step,
                           axpy(h, {{A61, &k1}, {A62, &k2v}, {A63, &k3v}, {A64, &k4v}, {A65, &k5v}},
                                step));
        auto next = axpy(h, {{B1, &k1}, {B3, &k3v}, {B4, &k4v}, {B5, &k5v}, {B6, &k6v}}, step);
        auto k7v = tau_rhs(p, tau + step, next);

        double err = 0.0;
        for (std::size_t i = 0; i < p.dim; ++i) {
            double e = step * (E1 * k1[i] + E3 * k3v[i] + E4 * k4v[i] + E5 * k5v[i] +
                               E6 * k6v[i] + E7 * k7v[i]);
            double tol = p.atol + p.rtol * std::max(std::abs(h[i]), std::abs(next[i]));
            err = std::max(err, std::abs(e) / tol);
        }
        if (!std::isfinite(err)) throw flow_error("flow: non-finite values in step", tau);

        if (err <= 1.0) {
            tau += step;
            h = std::move(next);
            k1 = std::move(k7v);  // first-same-as-last
            out.tau.push_back(tau);
            out.trajectory.push_back(h);
        }
        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        step *= std::clamp(factor, 0.2, 5.0);
        step = std::min(step, max_step);
        if (step < min_step) throw flow_error("flow: step size underflow", tau);
    }
    return out;
}

FlowResult residual_check(const FlowProblem& p, const std::vector<std::vector<double>>& prediction,
                          const FlowVerdict& settings) {
    for (const auto& nu : prediction)
        if (nu.size() != p.dim) throw input_error("residual_check: prediction length mismatch");
    FlowResult r = integrate(p);
    r.verdict = settings;

    r.residual.resize(r.tau.size());
    std::vector<char> defined(r.tau.size(), 0);
    for (std::size_t k = 0; k < r.tau.size(); ++k) {
        double level = r.tau[k];
        std::vector<double> z = r.trajectory[k];
        bool ok = true;
        for (const auto& nu : prediction) {
            // iterated logarithms: τ, log τ, log log τ, ...
            for (std::size_t i = 0; i < p.dim; ++i) z[i] += level * nu[i];
            if (&nu != &prediction.back()) {
                if (level <= 0.0) {
                    ok = false;
                    break;
                }
                level = std::log(level);
            }
        }
        if (ok) {
            r.residual[k] = std::move(z);
            defined[k] = 1;
        }
    }

    const double tail_from = p.tau_max - settings.tail_fraction * (p.tau_max - p.tau_min);
    double tail_max = 0.0;
    bool any_tail = false;
    for (std::size_t k = 0; k < r.tau.size(); ++k) {
        if (!defined[k] || r.tau[k] < tail_from) continue;
        any_tail = true;
        tail_max = std::max(tail_max, inf_norm(r.residual[k]));
    }
    if (!any_tail)
        throw flow_error("flow: residual undefined on the whole tail window", p.tau_max);

    // Drift: least-squares slope of ‖z‖∞ per decade of t = e^τ over the
    // tail window. A wrong leading prediction term makes z grow linearly in
    // τ and shows up here at order one; slower iterated-log leakage is the
    // box's job.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < r.tau.size(); ++k) {
        if (!defined[k] || r.tau[k] < tail_from) continue;
        double x = r.tau[k] / std::log(10.0);
        double y = inf_norm(r.residual[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    double drift = 0.0;
    double denom = count * sxx - sx * sx;
    if (count >= 2 && denom > 0.0) drift = (count * sxy - sx * sy) / denom;

    r.verdict.tail_max = tail_max;
    r.verdict.drift = drift;
    r.verdict.bounded = tail_max <= settings.box && std::abs(drift) <= settings.drift_tol;
    return r;
}

std::vector<std::vector<double>> prediction_from(const SequentialFiltration& seq) {
    std::vector<std::vector<double>> out;
    for (const Filtration& f : seq.terms) {
        std::vector<double> nu(f.covector.size());
        for (std::size_t i = 0; i < nu.size(); ++i) nu[i] = to_double(f.covector[i]);
        out.push_back(std::move(nu));
    }
    return out;
}

std::vector<FlowResult> run_batch(const PolarisedState& s,
                                  const std::vector<std::vector<double>>& starts,
                                  const std::vector<std::vector<double>>& prediction,
                                  double tau_min, double tau_max, double rtol, double atol,
                                  const FlowVerdict& settings) {
    std::vector<FlowResult> results(starts.size());
    parallel::for_each_index(starts.size(), [&](std::size_t i) {
        FlowProblem p = FlowProblem::from_state(s, starts[i]);
        p.tau_min = tau_min;
        p.tau_max = tau_max;
        p.rtol = rtol;
        p.atol = atol;
        results[i] = residual_check(p, prediction, settings);
    });
    return results;
}

}  // namespace balfilt::flow
