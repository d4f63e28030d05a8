#pragma once

#include <stdexcept>
#include <string>

namespace strichartz {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define STRICHARTZ_ERROR(Name)                                                  \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}    \
        const char* kind() const noexcept override { return #Name; }            \
    };

STRICHARTZ_ERROR(InvalidArgument)
STRICHARTZ_ERROR(BoundaryMassError)
STRICHARTZ_ERROR(ZeroModeError)
STRICHARTZ_ERROR(AliasError)
STRICHARTZ_ERROR(UnsupportedCase)
STRICHARTZ_ERROR(RegionError)
STRICHARTZ_ERROR(ConvergenceError)
STRICHARTZ_ERROR(BranchError)
STRICHARTZ_ERROR(DomainError)
STRICHARTZ_ERROR(ConstraintViolation)
STRICHARTZ_ERROR(DegenerateError)
STRICHARTZ_ERROR(InvalidRectangle)
STRICHARTZ_ERROR(VanishingSampleError)
STRICHARTZ_ERROR(StagnationError)

#undef STRICHARTZ_ERROR

}  // namespace strichartz
