#pragma once

#include <stdexcept>
#include <string>

namespace unitsig {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hard failure of a theorem-backed postcondition.  Must never fire on valid
// inputs; the CLI maps it to exit code 3.
struct InternalInconsistency : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};
struct FactorizationBudgetExceeded : Error {
    using Error::Error;
};
struct NotSquarefree : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};
struct MixedFields : Error {
    using Error::Error;
};
struct NotAUnit : Error {
    using Error::Error;
};
struct NormMinusOne : Error {
    using Error::Error;
};
struct NotTotallyPositive : Error {
    using Error::Error;
};
struct DecisionFalse : Error {
    using Error::Error;
};
struct NotSquareMod4 : Error {
    using Error::Error;
};
struct SquareDiscriminant : Error {
    using Error::Error;
};
struct MixedDiscriminants : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct NotASubgroup : Error {
    using Error::Error;
};

} // namespace unitsig
