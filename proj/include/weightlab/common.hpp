#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace weightlab {

using Complex = std::complex<double>;

// Points in R^n for n in {1, 2}. The second coordinate is ignored when n == 1.
using Vec = std::array<double, 2>;

/// Raised when an operation's precondition does not hold. The message names
/// the violated condition so the CLI can surface it verbatim.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation produces a non-finite value (overflow in a weight
/// power, a NaN difference quotient, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw PreconditionError(what);
}

double norm(const Vec& v, int n);

bool is_power_of_two(double value);
bool is_power_of_two(std::size_t value);

// Worker count used by parallel_for. Results never depend on it: every index
// writes its own slot and reductions happen afterwards in index order.
void set_thread_count(unsigned threads);
unsigned thread_count();

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace weightlab
