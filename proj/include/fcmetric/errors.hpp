#pragma once

#include <stdexcept>
#include <string>

namespace fcm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two elements with different algebra descriptors were combined.
class DescriptorMismatch : public Error {
public:
    using Error::Error;
};

/// A spectral operation was asked of an element that is not self-adjoint
/// within the given tolerance.
class NotSelfAdjoint : public Error {
public:
    using Error::Error;
};

/// A sampled check was invoked with no samples to draw.
class EmptySample : public Error {
public:
    using Error::Error;
};

/// An orbit iterate left the declared domain bounds of the space.
class DomainEscape : public Error {
public:
    using Error::Error;
};

/// A limit estimate could not be certified: the sequence tail still moves.
class TailNotConverged : public Error {
public:
    using Error::Error;
};

/// The contraction ratio is >= 1, so the Cauchy bound is meaningless.
class NormBoundViolated : public Error {
public:
    using Error::Error;
};

/// An example builder was called with a config for a different family.
class ConfigMismatch : public Error {
public:
    using Error::Error;
};

/// CLI/config-file level error: the run never started.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace fcm
