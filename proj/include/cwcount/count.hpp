#ifndef CWCOUNT_COUNT_HPP
#define CWCOUNT_COUNT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace cwc {

using Count = boost::multiprecision::cpp_int;
using Ratio = boost::multiprecision::cpp_rational;

Count factorial(int n);
Count binomial(int n, int r);

// rising_factorial(m, p) = m (m+1) ... (m+p-1); equals the number of ways to
// place p distinct items into m ordered slots. rising_factorial(m, 0) = 1.
Count rising_factorial(int m, int p);

}  // namespace cwc

#endif
