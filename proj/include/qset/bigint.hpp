#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qset {

// Exact integer arithmetic for all combinatorial counts. Totals like
// 2^qc and n^N leave 64 bits quickly, so everything countable is a BigInt.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r *= static_cast<unsigned long>(n - i);
    r /= static_cast<unsigned long>(i + 1);
  }
  return r;
}

// N! / (n_1! ... n_k!) where N is the sum of the parts.
inline BigInt multinomial(std::span<const std::size_t> parts) {
  std::size_t total = 0;
  for (std::size_t p : parts) total += p;
  BigInt r = factorial(total);
  for (std::size_t p : parts) r /= factorial(p);
  return r;
}

inline BigInt ipow(std::size_t base, std::size_t exp) {
  BigInt r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= static_cast<unsigned long>(base);
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

// Reduced fraction "num/den" (or plain integer when den divides num).
inline std::string rational_string(const BigInt& num, const BigInt& den) {
  BigInt g = boost::multiprecision::gcd(num, den);
  if (g == 0) return "0";
  BigInt n = num / g, d = den / g;
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

// Fixed six-decimal rendering of num/den, round half up.
inline std::string fixed6(const BigInt& num, const BigInt& den) {
  BigInt scaled = (num * 2000000 + den) / (den * 2);
  BigInt whole = scaled / 1000000;
  BigInt frac = scaled % 1000000;
  std::string f = frac.str();
  return whole.str() + "." + std::string(6 - f.size(), '0') + f;
}

}  // namespace qset
