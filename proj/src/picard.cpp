#include "slret/picard.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "slret/csv.hpp"
#include "slret/errors.hpp"

namespace slret::picard {

namespace {

constexpr double kConvergedTol = 1e-12;

struct Grid {
    double x0 = 0.0, x1 = 0.0, dx = 0.0;
    int n = 0;  // number of sub-intervals (even)
    std::vector<double> xs;
    std::vector<double> qv;      // q at nodes
    std::vector<double> xq;      // delayed argument at nodes, clamped to range
    std::vector<double> sinphi;  // sin(lambda*(x-x0)/p)
    std::vector<double> cosphi;
};

Grid make_grid(const ValidatedProblem& vp, Side side, double lambda, int n_grid) {
    if (n_grid < 64) throw std::invalid_argument("picard grid must have n_grid >= 64");
    Grid g;
    g.n = n_grid % 2 == 0 ? n_grid : n_grid + 1;
    g.x0 = vp.side_begin(side);
    g.x1 = vp.side_end(side);
    g.dx = (g.x1 - g.x0) / g.n;
    const double p = vp.p(side);
    g.xs.resize(g.n + 1);
    g.qv.resize(g.n + 1);
    g.xq.resize(g.n + 1);
    g.sinphi.resize(g.n + 1);
    g.cosphi.resize(g.n + 1);
    for (int j = 0; j <= g.n; ++j) {
        const double x = g.x0 + g.dx * j;
        g.xs[j] = x;
        g.qv[j] = vp.spec().q.eval(x);
        double d = vp.spec().delay.eval(x);
        g.xq[j] = std::clamp(x - d, g.x0, g.x1);
        const double phi = lambda * (x - g.x0) / p;
        g.sinphi[j] = std::sin(phi);
        g.cosphi[j] = std::cos(phi);
    }
    return g;
}

double table_linear(const Grid& g, const std::vector<double>& u, double x) {
    const double off = (x - g.x0) / g.dx;
    int k = static_cast<int>(off);
    if (k < 0) k = 0;
    if (k >= g.n) k = g.n - 1;
    const double t = (x - g.xs[k]) / g.dx;
    return u[k] + (u[k + 1] - u[k]) * t;
}

// Running integrals of q*cosphi*u_delayed and q*sinphi*u_delayed:
// composite Simpson over even prefixes, trapezoid on an odd final sub-step.
void partial_integrals(const Grid& g, const std::vector<double>& u, std::vector<double>& C,
                       std::vector<double>& S) {
    const int n = g.n;
    std::vector<double> gc(n + 1), gs(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double ud = table_linear(g, u, g.xq[j]);
        gc[j] = g.qv[j] * g.cosphi[j] * ud;
        gs[j] = g.qv[j] * g.sinphi[j] * ud;
    }
    C.assign(n + 1, 0.0);
    S.assign(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) {
        if (j % 2 == 0) {
            C[j] = C[j - 2] + g.dx / 3.0 * (gc[j - 2] + 4.0 * gc[j - 1] + gc[j]);
            S[j] = S[j - 2] + g.dx / 3.0 * (gs[j - 2] + 4.0 * gs[j - 1] + gs[j]);
        } else {
            C[j] = C[j - 1] + g.dx / 2.0 * (gc[j - 1] + gc[j]);
            S[j] = S[j - 1] + g.dx / 2.0 * (gs[j - 1] + gs[j]);
        }
    }
}

PicardRun run_side(const ValidatedProblem& vp, Side side, double lambda, ode::State head,
                   int n_iter, int n_grid) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("picard oracle requires lambda > 0");
    if (n_iter < 1) throw std::invalid_argument("picard needs n_iter >= 1");

    const Grid g = make_grid(vp, side, lambda, n_grid);
    const double p = vp.p(side);
    const int n = g.n;

    std::vector<double> head_u(n + 1), head_du(n + 1);
    for (int j = 0; j <= n; ++j) {
        head_u[j] = head.u * g.cosphi[j] + p * head.du / lambda * g.sinphi[j];
        head_du[j] = -head.u * lambda / p * g.sinphi[j] + head.du * g.cosphi[j];
    }

    PicardRun run;
    run.side = side;
    run.lambda = lambda;
    run.xs = g.xs;
    run.us = head_u;  // iterate 0

    std::vector<double> C, S, next(n + 1);
    for (int it = 0; it < n_iter; ++it) {
        partial_integrals(g, run.us, C, S);
        double res = 0.0;
        for (int j = 0; j <= n; ++j) {
            next[j] = head_u[j] + (g.sinphi[j] * C[j] - g.cosphi[j] * S[j]) / (p * lambda);
            res = std::max(res, std::fabs(next[j] - run.us[j]));
        }
        run.us.swap(next);
        ++run.iterations;
        run.residual_history.push_back(res);
        if (!std::isfinite(res)) throw NonfiniteState(g.x1);
        if (res < kConvergedTol) {
            run.converged = true;
            break;
        }
    }

    partial_integrals(g, run.us, C, S);
    run.dus.resize(n + 1);
    for (int j = 0; j <= n; ++j)
        run.dus[j] = head_du[j] + (g.cosphi[j] * C[j] + g.sinphi[j] * S[j]) / (p * p);

    const auto& r = run.residual_history;
    if (!run.converged && r.size() >= 3) {
        const std::size_t k = r.size();
        if (r[k - 1] >= r[k - 2] && r[k - 2] >= r[k - 3]) run.nonconvergence_warning = true;
    }
    return run;
}

}  // namespace

double PicardRun::u_linear(double x) const {
    const double x0 = xs.front();
    const double dx = xs[1] - xs[0];
    const int n = static_cast<int>(xs.size()) - 1;
    double off = (x - x0) / dx;
    int k = static_cast<int>(off);
    if (k < 0) k = 0;
    if (k >= n) k = n - 1;
    const double t = (x - xs[k]) / dx;
    return us[k] + (us[k + 1] - us[k]) * t;
}

PicardRun picard_left(const ValidatedProblem& vp, double lambda, int n_iter, int n_grid) {
    const ode::State head = ode::initial_state_left(vp, lambda);
    return run_side(vp, Side::left, lambda, head, n_iter, n_grid);
}

PicardRun picard_right(const ValidatedProblem& vp, double lambda, const PicardRun& left_run,
                       int n_iter, int n_grid) {
    if (!left_run.converged)
        throw std::invalid_argument("picard_right requires a converged left run");
    const ode::State head = ode::transmission_jump(vp, lambda, left_run.terminal());
    return run_side(vp, Side::right, lambda, head, n_iter, n_grid);
}

void export_csv(const PicardRun& run, std::ostream& out) {
    out << "x,u,du\n";
    for (std::size_t j = 0; j < run.xs.size(); ++j)
        out << fmt_double(run.xs[j]) << ',' << fmt_double(run.us[j]) << ','
            << fmt_double(run.dus[j]) << '\n';
}

void export_residuals_csv(const PicardRun& run, std::ostream& out) {
    out << "iteration,residual\n";
    for (std::size_t i = 0; i < run.residual_history.size(); ++i)
        out << (i + 1) << ',' << fmt_double(run.residual_history[i]) << '\n';
}

}  // namespace slret::picard
