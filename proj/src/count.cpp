#include "cwcount/count.hpp"

#include <stdexcept>

namespace cwc {

Count factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative");
  Count r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Count binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  Count num = 1;
  for (int i = 0; i < r; ++i) num *= (n - i);
  return num / factorial(r);
}

Count rising_factorial(int m, int p) {
  if (p < 0) throw std::invalid_argument("rising_factorial of negative");
  Count r = 1;
  for (int i = 0; i < p; ++i) r *= (m + i);
  return r;
}

}  // namespace cwc
