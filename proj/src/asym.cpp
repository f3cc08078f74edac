#include "slret/asym.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "slret/csv.hpp"
#include "slret/errors.hpp"

namespace slret::asym {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

BranchPrediction gamma_branch(const ValidatedProblem& vp, charfn::Branch branch, int n) {
    if (n < 1) throw std::invalid_argument("branch index must satisfy n >= 1");
    const auto& s = vp.spec();
    double hat = 0.0;
    switch (branch) {
        case charfn::Branch::A_left:
            hat = s.p1 * kPi * n / (s.c - s.a);
            break;
        case charfn::Branch::B_right:
            hat = s.p2 * kPi * (n + 0.5) / (s.b - s.c);
            break;
        case charfn::Branch::unclassified:
            throw std::invalid_argument("no prediction for the unclassified branch");
    }
    return {branch, n, hat};
}

double branch_spacing(const ValidatedProblem& vp, charfn::Branch branch) {
    const auto& s = vp.spec();
    switch (branch) {
        case charfn::Branch::A_left:
            return s.p1 * kPi / (s.c - s.a);
        case charfn::Branch::B_right:
            return s.p2 * kPi / (s.b - s.c);
        case charfn::Branch::unclassified:
            break;
    }
    throw std::invalid_argument("no spacing for the unclassified branch");
}

double xi_leading(const ValidatedProblem& vp, double lambda) {
    const auto& s = vp.spec();
    if (s.g2_plus[1] == 0.0)
        throw std::invalid_argument("xi_leading requires gamma21+ != 0");
    const double coeff = s.dt11 * s.dt21 * s.g2t_minus[1];
    if (coeff == 0.0)
        throw DegenerateLeadingTerm(
            "leading coefficient dt11*dt21*gamma21t- vanishes; the large-lambda "
            "comparison is meaningless");
    const double lam7 = std::pow(lambda, 7);
    return -(coeff * lam7) / (s.g2_plus[1] * s.p1) *
           std::sin(lambda * (s.c - s.a) / s.p1) * std::cos(lambda * (s.b - s.c) / s.p2);
}

double lemma2_estimate(const ValidatedProblem& vp, double lambda, double x,
                       Component which) {
    const auto& s = vp.spec();
    const double tol = 1e-12 * (s.b - s.a + 1.0);
    const bool minus_side = which == Component::u_minus || which == Component::du_minus;
    if (minus_side) {
        if (x < s.a - tol || x > s.c + tol)
            throw OutOfRange("lemma2_estimate: x outside the left subinterval");
    } else {
        if (x < s.c - tol || x > s.b + tol)
            throw OutOfRange("lemma2_estimate: x outside the right subinterval");
    }

    const double lam2 = lambda * lambda;
    switch (which) {
        case Component::u_minus:
            return -lam2 * s.dt11 * std::cos(lambda * (x - s.a) / s.p1);
        case Component::du_minus:
            return lam2 * lambda * s.dt11 / s.p1 * std::sin(lambda * (x - s.a) / s.p1);
        case Component::u_plus:
            return lam2 * lam2 * s.p2 * s.dt11 * s.g2t_minus[1] / (s.p1 * s.g2_plus[1]) *
                   std::sin(lambda * (s.c - s.a) / s.p1) *
                   std::sin(lambda * (x - s.c) / s.p2);
        case Component::du_plus:
            return lam2 * lam2 * lambda * s.dt11 * s.g2t_minus[1] / (s.p1 * s.g2_plus[1]) *
                   std::sin(lambda * (s.c - s.a) / s.p1) *
                   std::cos(lambda * (x - s.c) / s.p2);
    }
    return 0.0;
}

double eigenfunction_asym(const ValidatedProblem& vp, int n, int branch, Side side,
                          double x) {
    if (n < 1) throw std::invalid_argument("eigenfunction index must satisfy n >= 1");
    if (branch != 1 && branch != 2)
        throw std::invalid_argument("branch must be 1 or 2");
    const auto& s = vp.spec();
    const double la = s.c - s.a;  // left length
    const double lb = s.b - s.c;  // right length
    const double pi2 = kPi * kPi;
    const double nh = n + 0.5;

    if (side == Side::left) {
        if (branch == 1)
            return -(n * n * pi2 * s.p1 * s.p1 * s.dt11 / (la * la)) *
                   std::cos(n * kPi * (x - s.a) / la);
        return -(nh * nh * pi2 * s.p2 * s.p2 * s.dt11 / (lb * lb)) *
               std::cos(nh * kPi * s.p2 * (x - s.a) / (s.p1 * lb));
    }

    if (branch == 1) {
        const double n3 = static_cast<double>(n) * n * n;
        return n3 * pi2 * pi2 * s.p1 * s.p1 * s.p2 * s.dt11 * s.g2t_minus[1] /
               (s.g2_plus[1] * la * la * la) *
               std::sin(n * kPi * s.p1 * (x - s.c) / (s.p2 * la));
    }

    const double nh4 = nh * nh * nh * nh;
    const double p2_5 = std::pow(s.p2, 5);
    const double prefix = nh4 * pi2 * pi2 * p2_5 * s.dt11 * s.g2t_minus[1] /
                          (s.p1 * s.g2_plus[1] * lb * lb * lb * lb);
    const double phase_c = nh * kPi * s.p2 * la / (s.p1 * lb);
    const double phase_x = nh * kPi * (x - s.c) / lb;
    const double inner = std::cos(phase_x) - (x - s.c) / (n * s.p2) * std::sin(phase_x);
    return prefix * (std::sin(phase_c) * inner -
                     la / (n * s.p1) * std::cos(phase_c) * std::cos(phase_x));
}

AsymReport compare(const ValidatedProblem& vp, int n_max, double h) {
    if (n_max < 3) throw std::invalid_argument("compare requires n_max >= 3");
    const auto& s = vp.spec();

    const double top_a = gamma_branch(vp, charfn::Branch::A_left, n_max).lambda_hat;
    const double top_b = gamma_branch(vp, charfn::Branch::B_right, n_max).lambda_hat;
    const double min_spacing = std::min(branch_spacing(vp, charfn::Branch::A_left),
                                        branch_spacing(vp, charfn::Branch::B_right));
    const double lambda_max = std::max(top_a, top_b) + 0.5 * min_spacing;
    const double step = charfn::default_scan_step(vp);

    const charfn::RootSearchResult found =
        charfn::find_roots(vp, 0.0, lambda_max, step, h, charfn::kDefaultTolLambda);

    AsymReport report;
    report.degenerate_leading = s.dt11 * s.dt21 * s.g2t_minus[1] == 0.0;
    for (const auto& rec : found.roots) {
        if (rec.branch == charfn::Branch::unclassified) continue;
        if (rec.branch_n < 1 || rec.branch_n > n_max) continue;
        AsymRow row;
        row.n = rec.branch_n;
        row.branch = rec.branch;
        row.lambda_hat = gamma_branch(vp, rec.branch, rec.branch_n).lambda_hat;
        row.lambda_numeric = rec.lambda;
        row.abs_err = std::fabs(rec.lambda - row.lambda_hat);
        row.scaled_err = row.n * row.abs_err;
        report.rows.push_back(row);
        report.max_scaled_err = std::max(report.max_scaled_err, row.scaled_err);
    }
    return report;
}

void export_report_csv(const AsymReport& report, std::ostream& out) {
    out << "n,branch,lambda_hat,lambda_numeric,abs_err,scaled_err\n";
    for (const auto& r : report.rows)
        out << r.n << ',' << charfn::branch_name(r.branch) << ',' << fmt_double(r.lambda_hat)
            << ',' << fmt_double(r.lambda_numeric) << ',' << fmt_double(r.abs_err) << ','
            << fmt_double(r.scaled_err) << '\n';
}

}  // namespace slret::asym
