#pragma once

#include <stdexcept>
#include <string>

namespace ddl {

// Raised when an argument lies outside the mathematical domain of an operation
// (alpha outside (0, 0.5), r <= 1, non-finite input, ...).
class DomainError : public std::domain_error {
   public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised when a numerical procedure cannot produce a result for otherwise
// valid input, e.g. every importance weight underflows to zero.
class NumericalError : public std::runtime_error {
   public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ddl
