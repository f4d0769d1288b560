#pragma once

#include <stdexcept>
#include <string>

namespace cms {

struct DivisionByZero : std::domain_error {
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

struct DenominatorVanishes : std::domain_error {
  explicit DenominatorVanishes(const std::string& what) : std::domain_error(what) {}
};

struct PoleAtPoint : std::domain_error {
  explicit PoleAtPoint(const std::string& what) : std::domain_error(what) {}
};

// Raised when a division that must be exact leaves a remainder. Inside the
// library this always signals a structural bug or an input outside the
// subalgebra the operation is defined on.
struct InexactDivision : std::runtime_error {
  explicit InexactDivision(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedFamily : std::invalid_argument {
  explicit UnsupportedFamily(const std::string& what) : std::invalid_argument(what) {}
};

struct NotInvariant : std::invalid_argument {
  explicit NotInvariant(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidRequest : std::invalid_argument {
  explicit InvalidRequest(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cms
