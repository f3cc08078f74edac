#pragma once

#include <iosfwd>
#include <vector>

#include "slret/ode.hpp"
#include "slret/problem.hpp"

namespace slret::picard {

using problem::Side;
using problem::ValidatedProblem;

/// Successive-approximation solve of the side's Volterra integral equation
/// on a uniform quadrature grid; cross-checks the shooting integrator.
struct PicardRun {
    Side side;
    double lambda = 0.0;
    std::vector<double> xs, us, dus;
    int iterations = 0;
    std::vector<double> residual_history;  // sup distance between iterates
    bool converged = false;                // sup distance fell below 1e-12
    bool nonconvergence_warning = false;   // residuals stopped decreasing

    ode::State terminal() const { return {us.back(), dus.back()}; }

    /// Linear table lookup (the same rule the iteration uses for delayed
    /// arguments).
    double u_linear(double x) const;
};

/// Left-side run. Iterate 0 is the explicit head of the integral equation;
/// each sweep applies composite Simpson with per-node partial sums and a
/// trapezoid correction on odd final sub-steps. Requires lambda > 0 and
/// n_grid >= 64 (rounded up to even).
PicardRun picard_left(const ValidatedProblem& vp, double lambda, int n_iter, int n_grid);

/// Right-side run; the head terms are built from left_run's terminal values
/// through the transmission jump. Throws SingularTransmission near the
/// excluded lambda.
PicardRun picard_right(const ValidatedProblem& vp, double lambda, const PicardRun& left_run,
                       int n_iter, int n_grid);

/// CSV `x,u,du` of the final table.
void export_csv(const PicardRun& run, std::ostream& out);

/// CSV `iteration,residual`.
void export_residuals_csv(const PicardRun& run, std::ostream& out);

}  // namespace slret::picard
