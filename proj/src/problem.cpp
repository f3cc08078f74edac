#include "slret/problem.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "slret/errors.hpp"

namespace slret::problem {

namespace {

using nlohmann::json;

const json& get_object(const json& parent, const std::string& path, const char* key) {
    std::string full = path.empty() ? key : path + "." + key;
    if (!parent.contains(key)) throw SchemaError("missing key", full);
    const json& v = parent.at(key);
    if (!v.is_object()) throw SchemaError("expected an object at key", full);
    return v;
}

double get_number(const json& parent, const std::string& path, const char* key) {
    std::string full = path.empty() ? key : path + "." + key;
    if (!parent.contains(key)) throw SchemaError("missing key", full);
    const json& v = parent.at(key);
    if (!v.is_number()) throw SchemaError("expected a number at key", full);
    return v.get<double>();
}

std::string get_string(const json& parent, const std::string& path, const char* key) {
    std::string full = path.empty() ? key : path + "." + key;
    if (!parent.contains(key)) throw SchemaError("missing key", full);
    const json& v = parent.at(key);
    if (!v.is_string()) throw SchemaError("expected a string at key", full);
    return v.get<std::string>();
}

std::array<double, 2> get_pair(const json& parent, const std::string& path, const char* key) {
    std::string full = path.empty() ? key : path + "." + key;
    if (!parent.contains(key)) throw SchemaError("missing key", full);
    const json& v = parent.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw SchemaError("expected an array of two numbers at key", full);
    return {v[0].get<double>(), v[1].get<double>()};
}

void reject_extra_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!ok.count(it.key()))
            throw SchemaError("unexpected key", path.empty() ? it.key() : path + "." + it.key());
    }
}

expr::Expr parse_keyed_expr(const std::string& text, const char* key) {
    try {
        return expr::Expr::parse(text);
    } catch (const SyntaxError& e) {
        throw ExprError(key, e.what());
    }
}

}  // namespace

ProblemSpec parse_problem_json(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("invalid JSON in " + origin, e.what());
    }
    if (!root.is_object()) throw SchemaError("problem file must be a JSON object", origin);

    reject_extra_keys(root, "", {"interval", "p", "q", "delay", "boundary", "transmission"});

    ProblemSpec s;

    const json& interval = get_object(root, "", "interval");
    reject_extra_keys(interval, "interval", {"a", "c", "b"});
    s.a = get_number(interval, "interval", "a");
    s.c = get_number(interval, "interval", "c");
    s.b = get_number(interval, "interval", "b");

    const json& p = get_object(root, "", "p");
    reject_extra_keys(p, "p", {"p1", "p2"});
    s.p1 = get_number(p, "p", "p1");
    s.p2 = get_number(p, "p", "p2");

    s.q = parse_keyed_expr(get_string(root, "", "q"), "q");
    s.delay = parse_keyed_expr(get_string(root, "", "delay"), "delay");

    const json& boundary = get_object(root, "", "boundary");
    reject_extra_keys(boundary, "boundary", {"delta", "delta_tilde"});
    auto read_rows = [&](const char* key, double& r10, double& r11, double& r20, double& r21) {
        std::string full = std::string("boundary.") + key;
        if (!boundary.contains(key)) throw SchemaError("missing key", full);
        const json& v = boundary.at(key);
        if (!v.is_array() || v.size() != 2)
            throw SchemaError("expected two rows at key", full);
        auto row = [&](int i) -> std::array<double, 2> {
            const json& r = v[i];
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
                throw SchemaError("expected an array of two numbers at key",
                                  full + "[" + std::to_string(i) + "]");
            return {r[0].get<double>(), r[1].get<double>()};
        };
        auto r1 = row(0), r2 = row(1);
        r10 = r1[0];
        r11 = r1[1];
        r20 = r2[0];
        r21 = r2[1];
    };
    read_rows("delta", s.d10, s.d11, s.d20, s.d21);
    read_rows("delta_tilde", s.dt10, s.dt11, s.dt20, s.dt21);

    const json& trans = get_object(root, "", "transmission");
    reject_extra_keys(trans, "transmission", {"gamma10", "gamma2", "gamma2_tilde"});
    const json& g10 = get_object(trans, "transmission", "gamma10");
    reject_extra_keys(g10, "transmission.gamma10", {"plus", "minus"});
    s.g10_plus = get_number(g10, "transmission.gamma10", "plus");
    s.g10_minus = get_number(g10, "transmission.gamma10", "minus");

    const json& g2 = get_object(trans, "transmission", "gamma2");
    reject_extra_keys(g2, "transmission.gamma2", {"plus", "minus"});
    s.g2_plus = get_pair(g2, "transmission.gamma2", "plus");
    s.g2_minus = get_pair(g2, "transmission.gamma2", "minus");

    const json& g2t = get_object(trans, "transmission", "gamma2_tilde");
    reject_extra_keys(g2t, "transmission.gamma2_tilde", {"plus", "minus"});
    s.g2t_plus = get_pair(g2t, "transmission.gamma2_tilde", "plus");
    s.g2t_minus = get_pair(g2t, "transmission.gamma2_tilde", "minus");

    return s;
}

ProblemSpec load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open problem file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_json(buf.str(), path.string());
}

namespace {

void check_finite_constants(const ProblemSpec& s) {
    const double vals[] = {s.a,   s.c,   s.b,   s.p1,  s.p2,  s.d10, s.d11, s.d20,
                           s.d21, s.dt10, s.dt11, s.dt20, s.dt21, s.g10_plus, s.g10_minus,
                           s.g2_plus[0], s.g2_plus[1], s.g2_minus[0], s.g2_minus[1],
                           s.g2t_plus[0], s.g2t_plus[1], s.g2t_minus[0], s.g2t_minus[1]};
    for (double v : vals)
        if (!std::isfinite(v)) throw InvariantError("non-finite constant in problem spec");
}

}  // namespace

ValidatedProblem validate(const ProblemSpec& spec, int m) {
    if (m < 16) throw std::invalid_argument("validation grid must have m >= 16");

    check_finite_constants(spec);
    if (!(spec.a < spec.c && spec.c < spec.b))
        throw InvariantError("interval must satisfy a < c < b");
    if (spec.p1 == 0.0 || spec.p2 == 0.0)
        throw InvariantError("p1 and p2 must be nonzero");
    if (spec.p1 < 0.0 || spec.p2 < 0.0)
        throw InvariantError(
            "negative p_i rejected: p(x) = p_i^2 makes it equivalent to |p_i|; "
            "use the absolute value explicitly");
    if (spec.g10_plus == 0.0)
        throw InvariantError("gamma10+ must be nonzero (the jump divides by it)");

    const double tol = 1e-12 * (spec.b - spec.a);
    double delta_min = std::numeric_limits<double>::infinity();

    auto sweep = [&](double lo, double hi, double floor_x, const char* side_name) {
        for (int i = 0; i <= m; ++i) {
            double x = lo + (hi - lo) * static_cast<double>(i) / m;
            double d, qv;
            try {
                d = spec.delay.eval(x);
            } catch (const EvalDomainError&) {
                throw NonfiniteCoefficient(std::string("delay on ") + side_name, x);
            }
            try {
                qv = spec.q.eval(x);
            } catch (const EvalDomainError&) {
                throw NonfiniteCoefficient(std::string("q on ") + side_name, x);
            }
            if (!std::isfinite(d)) throw NonfiniteCoefficient("delay", x);
            if (!std::isfinite(qv)) throw NonfiniteCoefficient("q", x);
            if (d < -tol) throw DomainViolation("delay(x) >= 0", x);
            if (x - d < floor_x - tol)
                throw DomainViolation(std::string("x - delay(x) >= ") +
                                          (floor_x == spec.a ? "a" : "c"),
                                      x);
            delta_min = std::min(delta_min, std::max(d, 0.0));
        }
    };

    const double eps_l = 1e-9 * (spec.c - spec.a);
    const double eps_r = 1e-9 * (spec.b - spec.c);
    sweep(spec.a, spec.c - eps_l, spec.a, "left side");
    sweep(spec.c + eps_r, spec.b, spec.c, "right side");

    double q_cm = spec.q.eval(spec.c - eps_l);
    double q_cp = spec.q.eval(spec.c + eps_r);

    return ValidatedProblem(spec, m, delta_min, q_cm, q_cp);
}

bool equal_numbers(const ValidatedProblem& lhs, const ValidatedProblem& rhs) {
    const ProblemSpec& x = lhs.spec();
    const ProblemSpec& y = rhs.spec();
    return x.a == y.a && x.c == y.c && x.b == y.b && x.p1 == y.p1 && x.p2 == y.p2 &&
           x.d10 == y.d10 && x.d11 == y.d11 && x.d20 == y.d20 && x.d21 == y.d21 &&
           x.dt10 == y.dt10 && x.dt11 == y.dt11 && x.dt20 == y.dt20 && x.dt21 == y.dt21 &&
           x.g10_plus == y.g10_plus && x.g10_minus == y.g10_minus &&
           x.g2_plus == y.g2_plus && x.g2_minus == y.g2_minus &&
           x.g2t_plus == y.g2t_plus && x.g2t_minus == y.g2t_minus && x.q == y.q &&
           x.delay == y.delay && lhs.grid_points() == rhs.grid_points() &&
           lhs.delta_min() == rhs.delta_min() &&
           lhs.q_at_c_left() == rhs.q_at_c_left() &&
           lhs.q_at_c_right() == rhs.q_at_c_right();
}

}  // namespace slret::problem
