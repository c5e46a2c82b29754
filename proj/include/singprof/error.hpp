#ifndef SINGPROF_ERROR_HPP
#define SINGPROF_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace singprof {

enum class ErrorKind {
    Domain,
    Regime,
    NoSignChange,
    RootNotBracketed,
    MaxIterations,
    ToleranceNotMet,
    OutOfSpan,
    NotConverged,
    TooFewSamples,
    Underflow,
    Io,
};

/// Stable identifier used in reports, e.g. "DomainError".
const char* error_name(ErrorKind kind);

/// Base of every error raised by the library. Carries the originating module
/// so that front ends can report {error, module, detail} without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& detail)
        : std::runtime_error(detail), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

struct Violation {
    std::string field;
    std::string bound;
};

class DomainError : public Error {
public:
    DomainError(std::string module, std::vector<Violation> violations);
    DomainError(std::string module, std::string field, std::string bound)
        : DomainError(std::move(module), {Violation{std::move(field), std::move(bound)}}) {}

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

class RegimeError : public Error {
public:
    RegimeError(std::string module, const std::string& detail)
        : Error(ErrorKind::Regime, std::move(module), detail) {}
};

class ToleranceNotMet : public Error {
public:
    ToleranceNotMet(std::string module, const std::string& detail, double achieved)
        : Error(ErrorKind::ToleranceNotMet, std::move(module), detail), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace singprof

#endif // SINGPROF_ERROR_HPP
