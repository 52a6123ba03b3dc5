#pragma once

#include <stdexcept>
#include <string>

namespace weylflow {

// Base of every error raised by the library. kind() is the stable error class
// written to run manifests and used for the CLI exit status.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define WEYLFLOW_DEFINE_ERROR(Name, Kind)                                      \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(Kind, what) {}          \
    }

WEYLFLOW_DEFINE_ERROR(DegenerateMetricError, "degenerate-metric");
WEYLFLOW_DEFINE_ERROR(DegeneratePlaneError, "degenerate-plane");
WEYLFLOW_DEFINE_ERROR(DomainError, "domain");
WEYLFLOW_DEFINE_ERROR(SingularityError, "kinetic-singularity");
WEYLFLOW_DEFINE_ERROR(InvalidLevelError, "invalid-level");
WEYLFLOW_DEFINE_ERROR(ZeroVectorError, "zero-vector");
WEYLFLOW_DEFINE_ERROR(IntegrationError, "integration-nan");
WEYLFLOW_DEFINE_ERROR(NotLocallyPotentialError, "not-locally-potential");
WEYLFLOW_DEFINE_ERROR(FrameCollapseError, "frame-collapse");
WEYLFLOW_DEFINE_ERROR(OverflowError, "tangent-overflow");
WEYLFLOW_DEFINE_ERROR(InvalidStateError, "invalid-state");
WEYLFLOW_DEFINE_ERROR(GrazingError, "grazing");
WEYLFLOW_DEFINE_ERROR(InvalidTableError, "invalid-table");
WEYLFLOW_DEFINE_ERROR(ZeroFieldError, "zero-field");
WEYLFLOW_DEFINE_ERROR(TooFewSamplesError, "too-few-samples");
WEYLFLOW_DEFINE_ERROR(InfiniteHorizonError, "infinite-horizon");
WEYLFLOW_DEFINE_ERROR(UnsupportedConfigurationError, "unsupported-configuration");
WEYLFLOW_DEFINE_ERROR(NoOrbitError, "no-orbit");
WEYLFLOW_DEFINE_ERROR(ConfigError, "config");

#undef WEYLFLOW_DEFINE_ERROR

}  // namespace weylflow
