#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slret/problem.hpp"

namespace slret::charfn {

using problem::ValidatedProblem;

struct CharSample {
    double lambda = 0.0;
    double xi = 0.0;         // NaN when near_singular
    double xi_scaled = 0.0;  // xi / (1+lambda)^7, display rescale only
    bool near_singular = false;
};

enum class Branch { A_left, B_right, unclassified };

const char* branch_name(Branch b);

struct EigenvalueRecord {
    int index = 0;  // 1-based, by increasing lambda
    double lambda = 0.0;
    double lo = 0.0, hi = 0.0;  // final bisection bracket
    double residual = 0.0;      // |Xi(lambda)|
    Branch branch = Branch::unclassified;
    int branch_n = 0;
    double branch_error = 0.0;  // |lambda - nearest prediction|
};

struct RootSearchResult {
    std::vector<EigenvalueRecord> roots;
    // lambda* values whose exclusion zone hides a sign change; reported,
    // never counted as eigenvalues
    std::vector<double> unresolved_near_singular;
    std::vector<std::string> warnings;
};

/// Xi(lambda): shoot across both sides and substitute the terminal state
/// into the b-endpoint condition (the +lambda^2 sign of that row).
double xi(const ValidatedProblem& vp, double lambda, double h);

/// Excluded spectral parameters where the jump denominator vanishes:
/// sqrt(g21+/g21~+) when that ratio is positive and within range.
std::vector<double> singular_lambdas(const ValidatedProblem& vp, double lambda_max);

/// Uniform sample sweep. Each xi evaluation is independent; `parallel`
/// selects the OpenMP kernel, `false` the serial reference. Both produce
/// bitwise-identical samples. Samples within max(step, 1e-6*lambda*) of a
/// singular lambda* are flagged and skipped for bracketing.
std::vector<CharSample> scan(const ValidatedProblem& vp, double lambda_min,
                             double lambda_max, double step, double h,
                             bool parallel = true);

std::vector<CharSample> scan_serial(const ValidatedProblem& vp, double lambda_min,
                                    double lambda_max, double step, double h);

/// Bracket sign changes from a scan and refine each by bisection to
/// |hi - lo| <= tol_lambda * max(1, lambda). Only lambda > 0 roots are
/// reported; brackets touching the singular exclusion go to
/// unresolved_near_singular. The scan step must satisfy
/// step <= min(p1*pi/(c-a), p2*pi/(b-c)) / 2.
RootSearchResult find_roots(const ValidatedProblem& vp, double lambda_min,
                            double lambda_max, double step, double h, double tol_lambda,
                            bool parallel = true);

/// Default sweep step: min branch spacing / 8 (the required bound / 4).
double default_scan_step(const ValidatedProblem& vp);

/// Default refinement tolerance factor (1e-10).
inline constexpr double kDefaultTolLambda = 1e-10;

/// CSV `lambda,xi,xi_scaled,near_singular`.
void export_scan_csv(const std::vector<CharSample>& samples, std::ostream& out);

/// CSV `index,lambda,residual,branch,branch_n,branch_error`.
void export_roots_csv(const std::vector<EigenvalueRecord>& roots, std::ostream& out);

}  // namespace slret::charfn
