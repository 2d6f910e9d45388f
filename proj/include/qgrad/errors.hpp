#pragma once

#include <stdexcept>
#include <string>

namespace qgrad {

// Base for every error raised by the library; the CLI maps it to exit code 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define QGRAD_ERROR_TYPE(Name)                                                   \
    class Name : public Error {                                                  \
    public:                                                                      \
        explicit Name(const std::string& what) : Error(what) {}                  \
        const char* kind() const noexcept override { return #Name; }             \
    };

QGRAD_ERROR_TYPE(DomainError)
QGRAD_ERROR_TYPE(CondensationError)
QGRAD_ERROR_TYPE(NoSolution)
QGRAD_ERROR_TYPE(QuadratureNotConverged)
QGRAD_ERROR_TYPE(SingularD)
QGRAD_ERROR_TYPE(NoConvergence)
QGRAD_ERROR_TYPE(NoRoot)
QGRAD_ERROR_TYPE(CFLViolation)

#undef QGRAD_ERROR_TYPE

class InadmissibleCell : public Error {
public:
    InadmissibleCell(const std::string& what, int cell) : Error(what), cell_(cell) {}
    const char* kind() const noexcept override { return "InadmissibleCell"; }
    int cell() const noexcept { return cell_; }

private:
    int cell_;
};

}  // namespace qgrad
