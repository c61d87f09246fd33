// errors.hpp — exception types thrown across the library

#pragma once

#include <stdexcept>
#include <string>

namespace ebr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// operator_core
struct ZeroVectorError : Error { using Error::Error; };
struct DimMismatchError : Error { using Error::Error; };

// su_generators
struct NotOrthonormalError : Error { using Error::Error; };

// bloch_map
struct OutsideSpanError : Error { using Error::Error; };

// measurement_simplex
struct NegativeProbabilityError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };
struct DegenerateSimplexError : Error { using Error::Error; };

// hidden_measurement
struct AllExcludedError : Error { using Error::Error; };

// effective_measurement
struct ZeroProbabilityBranchError : Error { using Error::Error; };
struct EmptyIntervalError : Error { using Error::Error; };
struct NotUnitaryError : Error { using Error::Error; };

// volumetrics
struct OddDimensionError : Error { using Error::Error; };

// cli_harness / config parsing
struct ValidationError : Error { using Error::Error; };

} // namespace ebr
