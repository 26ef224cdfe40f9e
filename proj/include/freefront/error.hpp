#ifndef FREEFRONT_ERROR_HPP
#define FREEFRONT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace freefront {

enum class ErrorKind {
    // hypothesis validation
    MassNotUnit,
    NotSymmetric,
    NegativeValue,
    ZeroAtOrigin,
    NotLipschitz,
    SignConditionViolated,
    ZeroLineViolated,
    NegativeDensityInput,
    // geometry
    OutOfRange,
    DegenerateInterval,
    // solver
    CFLViolated,
    NegativeOvershoot,
    SingularSystem,
    PicardDiverged,
    InvariantBreached,
    HorizonUnreachable,
    WindowExceeded,
    // io
    ConfigError,
};

const char* error_kind_name(ErrorKind k);

/// Typed runtime error carrying the failure site (time / node when known).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string detail, double t = -1.0, int node = -1)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
          kind_(kind), detail_(std::move(detail)), t_(t), node_(node) {}

    ErrorKind kind() const { return kind_; }
    const std::string& detail() const { return detail_; }
    double time() const { return t_; }
    int node() const { return node_; }

private:
    ErrorKind kind_;
    std::string detail_;
    double t_;
    int node_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::string detail, int line = -1)
        : Error(ErrorKind::ConfigError, std::move(detail)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

} // namespace freefront

#endif
