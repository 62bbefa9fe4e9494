#pragma once

#include <stdexcept>
#include <string>

namespace hyperver {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define HYPERVER_ERROR_TYPE(NAME)                                     \
    class NAME : public Error {                                       \
    public:                                                           \
        explicit NAME(const std::string& msg = #NAME) : Error(msg) {} \
    }

HYPERVER_ERROR_TYPE(PoleInSum);
HYPERVER_ERROR_TYPE(DivisionByZeroJet);
HYPERVER_ERROR_TYPE(OrderOutOfRange);
HYPERVER_ERROR_TYPE(DomainError);
HYPERVER_ERROR_TYPE(PoleAtIndex);
HYPERVER_ERROR_TYPE(NotGeometric);
HYPERVER_ERROR_TYPE(NotAlternating);
HYPERVER_ERROR_TYPE(LadderTooShort);
HYPERVER_ERROR_TYPE(NoConvergence);
HYPERVER_ERROR_TYPE(DenominatorDivisibleByP);
HYPERVER_ERROR_TYPE(NotOneModFour);
HYPERVER_ERROR_TYPE(NotPrime);
HYPERVER_ERROR_TYPE(UnknownIdentity);
HYPERVER_ERROR_TYPE(ParamOutOfDomain);
HYPERVER_ERROR_TYPE(ValuationMismatch);
HYPERVER_ERROR_TYPE(UsageError);

#undef HYPERVER_ERROR_TYPE

} // namespace hyperver
