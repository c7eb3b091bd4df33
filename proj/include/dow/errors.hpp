#pragma once

#include <stdexcept>
#include <string>

namespace dow {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// wavefield construction / measurement
struct UnresolvableWidth : Error {
    explicit UnresolvableWidth(const std::string& msg) : Error(msg) {}
};
struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& msg) : Error(msg) {}
};
struct ZeroField : Error {
    explicit ZeroField(const std::string& msg) : Error(msg) {}
};

// evolution
struct StepTooLarge : Error {
    explicit StepTooLarge(const std::string& msg) : Error(msg) {}
};

// collapse / deformation
struct NonpositiveWidth : Error {
    explicit NonpositiveWidth(const std::string& msg) : Error(msg) {}
};
struct EnergyAtOrAboveThreshold : Error {
    explicit EnergyAtOrAboveThreshold(const std::string& msg) : Error(msg) {}
};
struct TargetUnreachable : Error {
    explicit TargetUnreachable(const std::string& msg) : Error(msg) {}
};

// trajectory
struct UnsortedEvents : Error {
    explicit UnsortedEvents(const std::string& msg) : Error(msg) {}
};

// comparator
struct InvalidRank : Error {
    explicit InvalidRank(const std::string& msg) : Error(msg) {}
};
struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg) : Error(msg) {}
};
struct NonpositiveScore : Error {
    explicit NonpositiveScore(const std::string& msg) : Error(msg) {}
};

// histogram metrics
struct TooFewCounts : Error {
    explicit TooFewCounts(const std::string& msg) : Error(msg) {}
};

}  // namespace dow
