#pragma once

#include <stdexcept>
#include <string>

namespace mvkit {

/// Base class for all mvkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define MVKIT_DEFINE_ERROR(name)                                \
    class name : public Error {                                 \
    public:                                                     \
        explicit name(const std::string& msg) : Error(msg) {}   \
    }

// Validation errors (bad input data or parameters).
MVKIT_DEFINE_ERROR(ShapeMismatch);
MVKIT_DEFINE_ERROR(NonFinite);
MVKIT_DEFINE_ERROR(ViewCountError);
MVKIT_DEFINE_ERROR(EmptyInput);
MVKIT_DEFINE_ERROR(LengthMismatch);
MVKIT_DEFINE_ERROR(BadSpec);
MVKIT_DEFINE_ERROR(BadBoundaries);
MVKIT_DEFINE_ERROR(BadParams);
MVKIT_DEFINE_ERROR(RankError);
MVKIT_DEFINE_ERROR(KernelError);
MVKIT_DEFINE_ERROR(ZeroRow);
MVKIT_DEFINE_ERROR(NotBinary);
MVKIT_DEFINE_ERROR(NoLabeled);
MVKIT_DEFINE_ERROR(DegenerateInput);
MVKIT_DEFINE_ERROR(NotFitted);

// I/O errors.
MVKIT_DEFINE_ERROR(IoError);
MVKIT_DEFINE_ERROR(ParseError);

// Numerical errors (factorization failures, solver breakdowns).
MVKIT_DEFINE_ERROR(NumericalFailure);

#undef MVKIT_DEFINE_ERROR

}  // namespace mvkit
