#pragma once

#include <stdexcept>
#include <string>

namespace mdiqkd {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidIntensity : Error {
    using Error::Error;
};
struct InvalidDistribution : Error {
    using Error::Error;
};
/// Decoy distribution has no single- or two-photon component.
struct DegenerateDecoyState : Error {
    using Error::Error;
};
/// Decoy/signal pair fails the photon-number ratio ordering.
struct DecoyConditionViolated : Error {
    using Error::Error;
};
struct InvalidParameter : Error {
    using Error::Error;
};
struct TruncationMismatch : Error {
    using Error::Error;
};
struct DegenerateChannel : Error {
    using Error::Error;
};
struct IncompleteData : Error {
    using Error::Error;
};
struct InconsistentCounts : Error {
    using Error::Error;
};
/// Decoy and signal states are proportional in the first two photon numbers;
/// the elimination denominators vanish.
struct DegenerateSourcePair : Error {
    using Error::Error;
};
/// Yield lower bound is non-positive, so no error-rate bound exists
/// (no key can be extracted).
struct UndefinedErrorBound : Error {
    using Error::Error;
};
struct OracleTooLarge : Error {
    using Error::Error;
};
struct InvalidProbability : Error {
    using Error::Error;
};
struct InvalidGrid : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace mdiqkd
