#pragma once

#include <iosfwd>
#include <vector>

#include "slret/charfn.hpp"
#include "slret/problem.hpp"

namespace slret::asym {

using problem::Side;
using problem::ValidatedProblem;

struct BranchPrediction {
    charfn::Branch branch;
    int n = 0;
    double lambda_hat = 0.0;
};

/// First-order spectrum families: A -> p1*pi*n/(c-a), B -> p2*pi*(n+1/2)/(b-c).
BranchPrediction gamma_branch(const ValidatedProblem& vp, charfn::Branch branch, int n);

/// Gap between consecutive predictions of a branch.
double branch_spacing(const ValidatedProblem& vp, charfn::Branch branch);

/// Leading large-lambda form of Xi:
/// -(dt11*dt21*g21t[-]*lambda^7)/(g21[+]*p1) * sin(lambda(c-a)/p1) * cos(lambda(b-c)/p2).
/// Throws DegenerateLeadingTerm when dt11*dt21*g21t[-] = 0.
double xi_leading(const ValidatedProblem& vp, double lambda);

enum class Component { u_minus, du_minus, u_plus, du_plus };

/// Leading term of the solution estimates (the O(.) remainder dropped).
double lemma2_estimate(const ValidatedProblem& vp, double lambda, double x,
                       Component which);

/// Closed-form eigenfunction asymptotics at index n; branch 1 pairs with
/// family A, branch 2 with family B; side selects the subinterval. The
/// branch-2 plus-side form keeps all printed 1/n correction terms.
double eigenfunction_asym(const ValidatedProblem& vp, int n, int branch, Side side,
                          double x);

struct AsymRow {
    int n = 0;
    charfn::Branch branch = charfn::Branch::unclassified;
    double lambda_hat = 0.0;
    double lambda_numeric = 0.0;
    double abs_err = 0.0;
    double scaled_err = 0.0;  // n * abs_err
};

struct AsymReport {
    std::vector<AsymRow> rows;  // matched roots, sorted by lambda_numeric
    double max_scaled_err = 0.0;
    bool degenerate_leading = false;
};

/// Numeric roots covering both branches up to index N, paired with their
/// classified predictions; the root sweep runs on the parallel kernel.
AsymReport compare(const ValidatedProblem& vp, int n_max, double h);

/// CSV `n,branch,lambda_hat,lambda_numeric,abs_err,scaled_err`.
void export_report_csv(const AsymReport& report, std::ostream& out);

}  // namespace slret::asym
