#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "slret/expr.hpp"

namespace slret::problem {

/// The two subintervals separated by the interface point c: left = [a,c],
/// right = [c,b].
enum class Side { left, right };

/// Full coefficient data of the boundary-value-transmission problem:
/// -p(x)u'' + q(x)u(x - delta(x)) = lambda^2 u on [a,c) u (c,b],
/// p = p1^2 left of c and p2^2 right of c, endpoint conditions with
/// eigenparameter terms (d*/dt*) and two transmission rows at c (g*).
struct ProblemSpec {
    double a = 0.0, c = 0.0, b = 0.0;
    double p1 = 1.0, p2 = 1.0;
    expr::Expr q;      // potential
    expr::Expr delay;  // delta(x) >= 0

    // endpoint rows: d10*u(a) - d11*u'(a) - lambda^2*(dt10*u(a) - dt11*u'(a)) = 0
    //                d20*u(b) - d21*u'(b) + lambda^2*(dt20*u(b) - dt21*u'(b)) = 0
    double d10 = 0.0, d11 = 0.0, d20 = 0.0, d21 = 0.0;
    double dt10 = 0.0, dt11 = 0.0, dt20 = 0.0, dt21 = 0.0;

    // transmission rows at c; g2*[j] multiplies the j-th derivative of u(c+-)
    double g10_plus = 0.0, g10_minus = 0.0;
    std::array<double, 2> g2_plus{};
    std::array<double, 2> g2_minus{};
    std::array<double, 2> g2t_plus{};
    std::array<double, 2> g2t_minus{};
};

/// Load a UTF-8 JSON problem file. Throws SchemaError naming the missing or
/// unexpected key, ExprError naming the key whose expression failed to
/// parse, and std::runtime_error on I/O failure.
ProblemSpec load(const std::filesystem::path& path);

/// Same parsing applied to in-memory text; `origin` names it in messages.
ProblemSpec parse_problem_json(const std::string& text, const std::string& origin);

class ValidatedProblem;

/// Checks the static invariants and the sampled coefficient constraints on
/// m+1 uniform points per closed subinterval (interface approached at
/// c -+ 1e-9 * side length). Throws InvariantError, DomainViolation or
/// NonfiniteCoefficient on the first failure. Certification is bounded by
/// the grid resolution; default m = 1024.
ValidatedProblem validate(const ProblemSpec& spec, int m = 1024);

/// Immutable, shareable across threads.
class ValidatedProblem {
public:
    const ProblemSpec& spec() const { return spec_; }
    int grid_points() const { return m_; }
    double delta_min() const { return delta_min_; }
    double q_at_c_left() const { return q_cminus_; }
    double q_at_c_right() const { return q_cplus_; }

    double side_begin(Side s) const { return s == Side::left ? spec_.a : spec_.c; }
    double side_end(Side s) const { return s == Side::left ? spec_.c : spec_.b; }
    double side_length(Side s) const { return side_end(s) - side_begin(s); }
    double p(Side s) const { return s == Side::left ? spec_.p1 : spec_.p2; }

    friend ValidatedProblem validate(const ProblemSpec&, int);

private:
    ValidatedProblem(ProblemSpec s, int m, double dmin, double qcm, double qcp)
        : spec_(std::move(s)), m_(m), delta_min_(dmin), q_cminus_(qcm), q_cplus_(qcp) {}

    ProblemSpec spec_;
    int m_;
    double delta_min_;
    double q_cminus_, q_cplus_;
};

bool equal_numbers(const ValidatedProblem& lhs, const ValidatedProblem& rhs);

}  // namespace slret::problem
