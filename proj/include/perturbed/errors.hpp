#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace perturbed {

// Base for every error the library raises. `code()` is the stable
// machine-readable identifier used in CLI output and tests.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define PERTURBED_DEFINE_ERROR(Name)                       \
    class Name : public Error {                            \
    public:                                                \
        explicit Name(const std::string& what)             \
            : Error(#Name, what) {}                        \
    }

// Expression language
PERTURBED_DEFINE_ERROR(SyntaxError);
PERTURBED_DEFINE_ERROR(UnknownIdentifier);
PERTURBED_DEFINE_ERROR(ArityError);
PERTURBED_DEFINE_ERROR(ForbiddenVariable);
PERTURBED_DEFINE_ERROR(IndexOutOfRange);
PERTURBED_DEFINE_ERROR(DivisionNearZero);
PERTURBED_DEFINE_ERROR(DomainError);

// Spaces and axiom checking
PERTURBED_DEFINE_ERROR(FloorViolation);
PERTURBED_DEFINE_ERROR(NonFinite);
PERTURBED_DEFINE_ERROR(NegativeExact);
PERTURBED_DEFINE_ERROR(NotQuotientMode);
PERTURBED_DEFINE_ERROR(EmptyDomain);

// Maps and certificates
PERTURBED_DEFINE_ERROR(LeftDomain);
PERTURBED_DEFINE_ERROR(NoInformativePairs);

// Solver
PERTURBED_DEFINE_ERROR(AlphaOutOfRange);
PERTURBED_DEFINE_ERROR(BetaOutOfRange);
PERTURBED_DEFINE_ERROR(NonPositiveFloor);
PERTURBED_DEFINE_ERROR(InvalidCertificate);
PERTURBED_DEFINE_ERROR(UniquenessViolation);

// Oracles
PERTURBED_DEFINE_ERROR(GridTooLarge);

// Problem files / CLI
PERTURBED_DEFINE_ERROR(ProblemFileError);

#undef PERTURBED_DEFINE_ERROR

}  // namespace perturbed
