#pragma once

#include <stdexcept>
#include <string>

namespace sumprod {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SUMPROD_DEFINE_ERROR(Name)          \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    }

SUMPROD_DEFINE_ERROR(DegeneratePair);
SUMPROD_DEFINE_ERROR(InvalidConfig);
SUMPROD_DEFINE_ERROR(InvalidArgument);
SUMPROD_DEFINE_ERROR(DivisionByZero);
SUMPROD_DEFINE_ERROR(ZeroScale);
SUMPROD_DEFINE_ERROR(ZeroShift);
SUMPROD_DEFINE_ERROR(BudgetExceeded);
SUMPROD_DEFINE_ERROR(EmptyHistogram);
SUMPROD_DEFINE_ERROR(EmptyCandidateList);
SUMPROD_DEFINE_ERROR(DegenerateInput);
SUMPROD_DEFINE_ERROR(IterationOverflow);
SUMPROD_DEFINE_ERROR(NonTermination);
SUMPROD_DEFINE_ERROR(InsufficientPoints);
SUMPROD_DEFINE_ERROR(ParseError);

#undef SUMPROD_DEFINE_ERROR

} // namespace sumprod
