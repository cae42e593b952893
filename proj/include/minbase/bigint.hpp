#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace minbase {

using bigint = boost::multiprecision::cpp_int;

inline bigint factorial(std::uint64_t n)
{
  bigint r = 1;
  for (std::uint64_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

inline bigint binomial(std::uint64_t n, std::uint64_t k)
{
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  bigint r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline bigint ipow(bigint b, std::uint64_t e)
{
  bigint r = 1;
  while (e) {
    if (e & 1)
      r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

} // namespace minbase
