#ifndef CREEPWAVE_ERRORS_HPP
#define CREEPWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace creepwave {

/// Base class for all library failures, so callers can distinguish them
/// from genuine std:: exceptions raised by the runtime.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Result not representable (overflow of the target type).
class RangeError : public Error {
public:
    using Error::Error;
};

/// Requested accuracy not reached (series or iteration did not converge).
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// A trajectory or path violates the obstacle geometry (penetration,
/// inward launch, path through the forbidden disk, degenerate observation
/// point on the symmetry axis).
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Contact pattern of a trajectory cannot be assigned to one of the four
/// canonical cases; carries the offending arclength interval.
class ClassificationError : public Error {
public:
    ClassificationError(const std::string& msg, double s_begin, double s_end)
        : Error(msg), s_begin(s_begin), s_end(s_end) {}
    double s_begin;
    double s_end;
};

/// Degenerate input where a sign or count is undefined (zero matrix entry,
/// path endpoint on a singular cycle, ray segment lying on the axis).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Evaluation lands on a caustic where the leading-order amplitude diverges.
class CausticError : public Error {
public:
    using Error::Error;
};

/// Evaluation lands on (or too near) a pole of a closed-form expression.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Point lies on a singular cycle of the Lagrangian curve.
class SingularCycleError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration (CLI / config file).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace creepwave

#endif
