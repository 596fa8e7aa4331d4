#pragma once

#include <stdexcept>
#include <string>

namespace planimetric {

// Base class for every failure the library reports. Each condition named in
// an engine contract gets its own type so callers can filter precisely.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PLANIMETRIC_DEFINE_ERROR(NAME)                 \
    class NAME : public Error {                        \
    public:                                            \
        using Error::Error;                            \
    }

PLANIMETRIC_DEFINE_ERROR(InvalidDomain);
PLANIMETRIC_DEFINE_ERROR(PointOutsideDomain);
PLANIMETRIC_DEFINE_ERROR(DegenerateQuery);
PLANIMETRIC_DEFINE_ERROR(TooCoarse);
PLANIMETRIC_DEFINE_ERROR(NoConvergence);
PLANIMETRIC_DEFINE_ERROR(IllConditioned);
PLANIMETRIC_DEFINE_ERROR(TailTooLarge);
PLANIMETRIC_DEFINE_ERROR(StencilOutsideDomain);
PLANIMETRIC_DEFINE_ERROR(CoincidentPoints);
PLANIMETRIC_DEFINE_ERROR(PointsTooCloseToBoundary);
PLANIMETRIC_DEFINE_ERROR(NoPath);
PLANIMETRIC_DEFINE_ERROR(UnsupportedDomain);
PLANIMETRIC_DEFINE_ERROR(OrbitTruncationUnsafe);
PLANIMETRIC_DEFINE_ERROR(NotNested);
PLANIMETRIC_DEFINE_ERROR(MetricEvaluationFailed);
PLANIMETRIC_DEFINE_ERROR(ConfigError);

#undef PLANIMETRIC_DEFINE_ERROR

} // namespace planimetric
