#pragma once

#include <stdexcept>
#include <string>

namespace diophlab {

// Base class for all errors raised by the library. Specific error types
// exist so callers (and tests) can distinguish contract violations.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define DIOPHLAB_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                          \
    public:                                                               \
        explicit Name(const std::string& what = #Name) : Error(what) {}  \
    }

DIOPHLAB_DEFINE_ERROR(NotSquare);
DIOPHLAB_DEFINE_ERROR(DimMismatch);
DIOPHLAB_DEFINE_ERROR(LengthMismatch);
DIOPHLAB_DEFINE_ERROR(DependentBasis);
DIOPHLAB_DEFINE_ERROR(DimensionTooLarge);
DIOPHLAB_DEFINE_ERROR(GradeOutOfRange);
DIOPHLAB_DEFINE_ERROR(ArityMismatch);
DIOPHLAB_DEFINE_ERROR(RankDeficient);
DIOPHLAB_DEFINE_ERROR(ColumnMismatch);
DIOPHLAB_DEFINE_ERROR(UnknownBuiltin);
DIOPHLAB_DEFINE_ERROR(InvalidFlowTuple);
DIOPHLAB_DEFINE_ERROR(NonDyadicExponent);
DIOPHLAB_DEFINE_ERROR(InvalidWeights);
DIOPHLAB_DEFINE_ERROR(EmptyScan);
DIOPHLAB_DEFINE_ERROR(SearchExhausted);
DIOPHLAB_DEFINE_ERROR(ZeroRowError);
DIOPHLAB_DEFINE_ERROR(WitnessTooWeak);
DIOPHLAB_DEFINE_ERROR(NoValidRounding);
DIOPHLAB_DEFINE_ERROR(EmptyStream);
DIOPHLAB_DEFINE_ERROR(TooFewSamples);
DIOPHLAB_DEFINE_ERROR(ZeroFunction);
DIOPHLAB_DEFINE_ERROR(EmptyFamily);
DIOPHLAB_DEFINE_ERROR(ParseError);
DIOPHLAB_DEFINE_ERROR(ConfigError);

#undef DIOPHLAB_DEFINE_ERROR

} // namespace diophlab
