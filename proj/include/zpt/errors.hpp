#ifndef ZPT_ERRORS_HPP
#define ZPT_ERRORS_HPP

#include <stdexcept>

namespace zpt {

// A requested computation needs more field elements than the enumeration
// budget allows. Callers treat this as "level not reachable", never as a bug.
class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Coefficient or series precision is too small for the requested level.
class PrecisionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// An identity that must hold for exact arithmetic failed (non-integral norm,
// inexact Newton division, degree mismatch). Always indicates a bug.
class ConsistencyError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace zpt

#endif  // ZPT_ERRORS_HPP
