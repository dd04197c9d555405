#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace gowers {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Thrown when an enumeration would exceed the configured work budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a BFS closure grows past its vertex cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

// Default cap on elementary cube evaluations per enumeration call.
inline constexpr std::uint64_t kDefaultWorkBudget = 1ull << 34;

}  // namespace gowers
