#pragma once

#include <stdexcept>
#include <string>

namespace padecont {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Root finder failed to meet the residual tolerance within max_iters.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Evaluation hit a division by ~0 or log/sqrt branch singularity.
class SingularEvaluation : public Error {
public:
    using Error::Error;
};

/// Confluent node multiplicity requires a jet order beyond the configured cap.
class NodeOrderTooHigh : public Error {
public:
    using Error::Error;
};

/// Interpolation defect of a built approximant exceeds defect_tol.
class DefectTooLarge : public Error {
public:
    using Error::Error;
};

/// Operation requires a newtonian table but the table is row-wise.
class NotNewtonian : public Error {
public:
    using Error::Error;
};

/// Exact division by w_{n+1} left a remainder above an_tol.
class DivisionResidual : public Error {
public:
    using Error::Error;
};

/// All samples of K fell inside the exclusion family.
class EmptyKEpsilon : public Error {
public:
    using Error::Error;
};

/// Fewer usable entries than the estimator requires.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Every error in the window is zero: exact recovery, rate undefined.
class AllZeroErrors : public Error {
public:
    using Error::Error;
};

/// Fitted rate >= 1: no continuation conclusion can be drawn.
class RateNotContractive : public Error {
public:
    using Error::Error;
};

/// Pointwise estimation requested at a point of the interpolation set.
class PointInSigma : public Error {
public:
    using Error::Error;
};

/// A probe point coincides with an interpolation node.
class ProbeOnSupport : public Error {
public:
    using Error::Error;
};

/// Green function requested but the set descriptor carries no capacity.
class MissingCapacity : public Error {
public:
    using Error::Error;
};

/// Scenario configuration failed to parse or validate.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& field, const std::string& msg)
        : Error("config field '" + field + "': " + msg), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

} // namespace padecont
