#pragma once

#include <iosfwd>
#include <vector>

#include "slret/problem.hpp"

namespace slret::ode {

using problem::Side;
using problem::ValidatedProblem;

struct State {
    double u = 0.0;
    double du = 0.0;
};

/// Dense one-sided solution: nodes at uniform step h (last step may be
/// short), cubic-Hermite interpolable anywhere in the covered range.
class Trajectory {
public:
    Trajectory(Side side, double lambda, double x_begin, double step,
               std::vector<double> xs, std::vector<double> us, std::vector<double> dus,
               bool degenerate_init);

    Side side() const { return side_; }
    double lambda() const { return lambda_; }
    double begin() const { return xs_.front(); }
    double end() const { return xs_.back(); }
    double step() const { return h_; }
    std::size_t node_count() const { return xs_.size(); }
    double node_x(std::size_t i) const { return xs_[i]; }
    State node_state(std::size_t i) const { return {us_[i], dus_[i]}; }

    /// True when the initial state was exactly (0,0): the solution is
    /// identically zero and carries no spectral information.
    bool degenerate_init() const { return degenerate_init_; }

    /// Hermite-interpolated state; throws OutOfRange outside [begin,end].
    State at(double x) const;

private:
    std::size_t segment_index(double x) const;

    Side side_;
    double lambda_;
    double h_;
    std::vector<double> xs_, us_, dus_;
    bool degenerate_init_;
};

/// u'' = (q(x)*u_delayed - lambda^2*u) / p_side^2.
double rhs(const ValidatedProblem& vp, Side side, double lambda, double x, double u,
           double u_delayed);

/// Shooting start at a: u = d11 - lambda^2*dt11, u' = d10 - lambda^2*dt10.
State initial_state_left(const ValidatedProblem& vp, double lambda);

/// Jump across c. Throws SingularTransmission when
/// |g21+ - lambda^2*g21~+| < 1e-12 * (|g21+| + lambda^2*|g21~+| + 1).
State transmission_jump(const ValidatedProblem& vp, double lambda, State left_end);

/// Fixed-step RK4 with cubic-Hermite dense output; retarded values are read
/// from the already-committed nodes, and a stage whose delayed argument
/// lands inside the current step extrapolates the most recent committed
/// segment. Throws NonfiniteState on blow-up.
Trajectory integrate(const ValidatedProblem& vp, Side side, double lambda, State init,
                     double h);

/// side_length/4096, or min(delta_min/4, side_length/2000) when the
/// recorded minimum delay is positive.
double default_step(const ValidatedProblem& vp, Side side);

struct FullSolution {
    Trajectory left;
    Trajectory right;
    double lambda;
    State left_end;     // left trajectory terminal state (jump input)
    State right_begin;  // jump output
};

FullSolution solve(const ValidatedProblem& vp, double lambda, double h);

/// State at x in [a,b]; at x = c returns the left limit.
State eval_solution(const FullSolution& sol, double x);

/// Right limit at the interface point.
State solution_right_limit_at_c(const FullSolution& sol);

/// CSV `x,u,du` at node resolution.
void export_csv(const Trajectory& t, std::ostream& out);

}  // namespace slret::ode
