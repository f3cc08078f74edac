#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slret {

/// Parse failure in coefficient-expression text. `offset` is a byte index
/// into the source string.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifier : public SyntaxError {
public:
    UnknownIdentifier(const std::string& name, std::size_t offset)
        : SyntaxError("unknown identifier '" + name + "'", offset), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Evaluation hit log(<=0), sqrt(<0), division by zero, or an overflow to
/// a non-finite value.
class EvalDomainError : public std::runtime_error {
public:
    EvalDomainError(const std::string& what, double x)
        : std::runtime_error(what + " at x=" + std::to_string(x)) {}
};

/// Problem file is structurally wrong; `key` is the dotted path of the
/// missing or unexpected entry.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& msg, std::string key)
        : std::runtime_error(msg + ": " + key), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Expression text under a named problem-file key failed to parse.
class ExprError : public std::runtime_error {
public:
    ExprError(const std::string& key, const std::string& detail)
        : std::runtime_error("expression error in key \"" + key + "\": " + detail),
          key_(key) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// A static problem invariant failed (interval ordering, p_i = 0, ...).
class InvariantError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A sampled coefficient constraint failed; carries the grid point.
class DomainViolation : public std::runtime_error {
public:
    DomainViolation(const std::string& constraint, double x)
        : std::runtime_error(constraint + " violated at x=" + std::to_string(x)),
          constraint_(constraint), x_(x) {}
    const std::string& constraint() const noexcept { return constraint_; }
    double x() const noexcept { return x_; }

private:
    std::string constraint_;
    double x_;
};

class NonfiniteCoefficient : public std::runtime_error {
public:
    NonfiniteCoefficient(const std::string& which, double x)
        : std::runtime_error("coefficient " + which + " non-finite at x=" +
                             std::to_string(x)) {}
};

/// Integration blew up.
class NonfiniteState : public std::runtime_error {
public:
    explicit NonfiniteState(double x)
        : std::runtime_error("non-finite state at x=" + std::to_string(x)), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

/// The jump denominator gamma10+*(gamma21+ - lambda^2*gamma21~+) is within
/// the singular exclusion.
class SingularTransmission : public std::runtime_error {
public:
    explicit SingularTransmission(double lambda)
        : std::runtime_error("transmission conditions singular at lambda=" +
                             std::to_string(lambda)),
          lambda_(lambda) {}
    double lambda() const noexcept { return lambda_; }

private:
    double lambda_;
};

class OutOfRange : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Leading coefficient of the large-lambda form of Xi vanishes; the
/// asymptotic comparison is meaningless rather than zero.
class DegenerateLeadingTerm : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace slret
