#include <string>

#include "hdx/error.hpp"
#include "hdx/numeric.hpp"
#include "hdx/trickledown.hpp"

namespace hdx {

double harmonic(int n) {
  if (n < 0) throw Error(ErrorKind::IndexOutOfRange, "harmonic number of negative order " + std::to_string(n));
  CompensatedSum s;
  for (int j = n; j >= 1; --j) s += 1.0L / j;
  return static_cast<double>(s.value());
}

double harmonic_tail(int n, int i) {
  if (n < 0 || i < 0 || i > n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "harmonic tail H_" + std::to_string(n) + "(" + std::to_string(i) + ") needs 0 <= i <= n");
  }
  CompensatedSum s;
  // Descending order keeps the small terms together.
  for (int j = n; j >= std::max(i, 1); --j) s += 1.0L / j;
  return static_cast<double>(s.value());
}

}  // namespace hdx
