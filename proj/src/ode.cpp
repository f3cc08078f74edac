#include "slret/ode.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "slret/csv.hpp"
#include "slret/errors.hpp"

namespace slret::ode {

namespace {

State hermite(double x0, double x1, double u0, double du0, double u1, double du1,
              double x) {
    const double hs = x1 - x0;
    const double t = (x - x0) / hs;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    const double u = h00 * u0 + h10 * hs * du0 + h01 * u1 + h11 * hs * du1;
    const double g00 = (6 * t2 - 6 * t) / hs;
    const double g10 = 3 * t2 - 4 * t + 1;
    const double g01 = (-6 * t2 + 6 * t) / hs;
    const double g11 = 3 * t2 - 2 * t;
    const double du = g00 * u0 + g10 * du0 + g01 * u1 + g11 * du1;
    return {u, du};
}

}  // namespace

Trajectory::Trajectory(Side side, double lambda, double /*x_begin*/, double step,
                       std::vector<double> xs, std::vector<double> us,
                       std::vector<double> dus, bool degenerate_init)
    : side_(side),
      lambda_(lambda),
      h_(step),
      xs_(std::move(xs)),
      us_(std::move(us)),
      dus_(std::move(dus)),
      degenerate_init_(degenerate_init) {
    if (xs_.size() < 2 || xs_.size() != us_.size() || xs_.size() != dus_.size())
        throw std::invalid_argument("trajectory needs matching node arrays");
}

std::size_t Trajectory::segment_index(double x) const {
    const std::size_t n = xs_.size();
    if (x >= xs_[n - 2]) return n - 2;
    const double off = (x - xs_.front()) / h_;
    std::size_t k = off <= 0 ? 0 : static_cast<std::size_t>(off);
    if (k > n - 2) k = n - 2;
    while (k > 0 && x < xs_[k]) --k;
    while (k + 2 < n && x > xs_[k + 1]) ++k;
    return k;
}

State Trajectory::at(double x) const {
    const double tol = 1e-12 * (end() - begin() + 1.0);
    if (x < begin() - tol || x > end() + tol)
        throw OutOfRange("trajectory query outside covered range");
    x = std::clamp(x, begin(), end());
    const std::size_t k = segment_index(x);
    if (x == xs_[k]) return {us_[k], dus_[k]};
    if (x == xs_[k + 1]) return {us_[k + 1], dus_[k + 1]};
    return hermite(xs_[k], xs_[k + 1], us_[k], dus_[k], us_[k + 1], dus_[k + 1], x);
}

double rhs(const ValidatedProblem& vp, Side side, double lambda, double x, double u,
           double u_delayed) {
    const double p = vp.p(side);
    return (vp.spec().q.eval(x) * u_delayed - lambda * lambda * u) / (p * p);
}

State initial_state_left(const ValidatedProblem& vp, double lambda) {
    const auto& s = vp.spec();
    const double lam2 = lambda * lambda;
    return {s.d11 - lam2 * s.dt11, s.d10 - lam2 * s.dt10};
}

State transmission_jump(const ValidatedProblem& vp, double lambda, State left_end) {
    const auto& s = vp.spec();
    const double lam2 = lambda * lambda;
    const double den_core = s.g2_plus[1] - lam2 * s.g2t_plus[1];
    const double scale = std::fabs(s.g2_plus[1]) + lam2 * std::fabs(s.g2t_plus[1]) + 1.0;
    if (std::fabs(den_core) < 1e-12 * scale) throw SingularTransmission(lambda);

    const double u_plus = -(s.g10_minus / s.g10_plus) * left_end.u;
    const double num =
        s.g10_plus * (lam2 * s.g2t_minus[1] - s.g2_minus[1]) * left_end.du +
        (s.g10_plus * (lam2 * s.g2t_minus[0] - s.g2_minus[0]) -
         s.g10_minus * (lam2 * s.g2t_plus[0] - s.g2_plus[0])) *
            left_end.u;
    const double du_plus = num / (s.g10_plus * den_core);
    return {u_plus, du_plus};
}

Trajectory integrate(const ValidatedProblem& vp, Side side, double lambda, State init,
                     double h) {
    if (!(h > 0.0)) throw std::invalid_argument("step h must be positive");
    if (!std::isfinite(init.u) || !std::isfinite(init.du))
        throw std::invalid_argument("non-finite initial state");

    const double x0 = vp.side_begin(side);
    const double x1 = vp.side_end(side);
    const double len = x1 - x0;
    const double lam2 = lambda * lambda;
    const double p = vp.p(side);
    const double psq = p * p;
    const auto& q = vp.spec().q;
    const auto& delay = vp.spec().delay;

    std::size_t nsteps = static_cast<std::size_t>(std::ceil(len / h - 1e-9));
    if (nsteps < 1) nsteps = 1;

    std::vector<double> xs, us, dus;
    xs.reserve(nsteps + 1);
    us.reserve(nsteps + 1);
    dus.reserve(nsteps + 1);
    xs.push_back(x0);
    us.push_back(init.u);
    dus.push_back(init.du);

    const bool degenerate = init.u == 0.0 && init.du == 0.0;

    // delta(x0) = 0 under the validated delay constraint, so the delayed
    // value at x0 is the initial value itself; used for first-step lookups
    // before any segment is committed.
    const double udd0 = (q.eval(x0) * init.u - lam2 * init.u) / psq;

    auto hist_value = [&](double xq) -> double {
        const std::size_t n = xs.size();
        if (xq < x0) xq = x0;
        if (n == 1) {
            const double t = xq - x0;
            return us[0] + dus[0] * t + 0.5 * udd0 * t * t;
        }
        std::size_t k;
        if (xq >= xs[n - 2]) {
            k = n - 2;  // covers the last segment and current-step extrapolation
        } else {
            const double off = (xq - x0) / h;
            k = off <= 0 ? 0 : static_cast<std::size_t>(off);
            if (k > n - 2) k = n - 2;
            while (k > 0 && xq < xs[k]) --k;
            while (k + 2 < n && xq > xs[k + 1]) ++k;
        }
        return hermite(xs[k], xs[k + 1], us[k], dus[k], us[k + 1], dus[k + 1], xq).u;
    };

    auto deriv = [&](double x, double u, double v, double& fu, double& fv) {
        double xq = x - delay.eval(x);
        if (xq > x) xq = x;
        const double ud = hist_value(xq);
        fu = v;
        fv = (q.eval(x) * ud - lam2 * u) / psq;
    };

    double xcur = x0;
    double u = init.u;
    double v = init.du;
    for (std::size_t step = 0; step < nsteps; ++step) {
        const double xnext = (step + 1 == nsteps) ? x1 : x0 + static_cast<double>(step + 1) * h;
        const double hs = xnext - xcur;
        const double xm = xcur + 0.5 * hs;
        double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
        deriv(xcur, u, v, k1u, k1v);
        deriv(xm, u + 0.5 * hs * k1u, v + 0.5 * hs * k1v, k2u, k2v);
        deriv(xm, u + 0.5 * hs * k2u, v + 0.5 * hs * k2v, k3u, k3v);
        deriv(xnext, u + hs * k3u, v + hs * k3v, k4u, k4v);
        u += hs / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += hs / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        if (!std::isfinite(u) || !std::isfinite(v)) throw NonfiniteState(xnext);
        xcur = xnext;
        xs.push_back(xcur);
        us.push_back(u);
        dus.push_back(v);
    }

    return Trajectory(side, lambda, x0, h, std::move(xs), std::move(us), std::move(dus),
                      degenerate);
}

double default_step(const ValidatedProblem& vp, Side side) {
    const double len = vp.side_length(side);
    if (vp.delta_min() > 0.0) return std::min(vp.delta_min() / 4.0, len / 2000.0);
    return len / 4096.0;
}

FullSolution solve(const ValidatedProblem& vp, double lambda, double h) {
    Trajectory left = integrate(vp, Side::left, lambda, initial_state_left(vp, lambda), h);
    const State left_end = left.node_state(left.node_count() - 1);
    const State right_begin = transmission_jump(vp, lambda, left_end);
    Trajectory right = integrate(vp, Side::right, lambda, right_begin, h);
    return {std::move(left), std::move(right), lambda, left_end, right_begin};
}

State eval_solution(const FullSolution& sol, double x) {
    const double a = sol.left.begin();
    const double c = sol.left.end();
    const double b = sol.right.end();
    const double tol = 1e-12 * (b - a + 1.0);
    if (x < a - tol || x > b + tol)
        throw OutOfRange("solution query outside [a,b]");
    if (x <= c) return sol.left.at(std::clamp(x, a, c));
    return sol.right.at(std::min(x, b));
}

State solution_right_limit_at_c(const FullSolution& sol) {
    return sol.right.node_state(0);
}

void export_csv(const Trajectory& t, std::ostream& out) {
    out << "x,u,du\n";
    for (std::size_t i = 0; i < t.node_count(); ++i) {
        const State s = t.node_state(i);
        out << fmt_double(t.node_x(i)) << ',' << fmt_double(s.u) << ','
            << fmt_double(s.du) << '\n';
    }
}

}  // namespace slret::ode
