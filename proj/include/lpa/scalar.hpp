#ifndef LPA_SCALAR_HPP
#define LPA_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "lpa/errors.hpp"

namespace lpa {

/// The rationals with arbitrary-precision integer numerator/denominator.
/// cpp_rational keeps values in lowest terms with positive denominator, so
/// representations are canonical.
class RationalField {
 public:
  using Value = boost::multiprecision::cpp_rational;

  Value zero() const { return Value(0); }
  Value one() const { return Value(1); }
  Value add(const Value& a, const Value& b) const { return Value(a + b); }
  Value sub(const Value& a, const Value& b) const { return Value(a - b); }
  Value mul(const Value& a, const Value& b) const { return Value(a * b); }
  Value neg(const Value& a) const { return Value(-a); }
  Value div(const Value& a, const Value& b) const {
    if (b == 0) throw InputError("division by zero");
    return Value(a / b);
  }
  bool is_zero(const Value& a) const { return a == 0; }
  bool is_negative(const Value& a) const { return a < 0; }
  Value abs(const Value& a) const { return a < 0 ? Value(-a) : a; }

  /// Parses a decimal integer literal.
  Value from_decimal(const std::string& digits) const { return Value(digits); }

  std::string to_string(const Value& a) const { return a.str(); }

  std::string name() const { return "q"; }
  bool operator==(const RationalField&) const { return true; }
};

/// The prime field F_p for a prime p < 2^31; values are residues 0..p-1.
class PrimeField {
 public:
  using Value = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw InputError("field order " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t order() const { return p_; }

  Value zero() const { return 0; }
  Value one() const { return 1 % p_; }
  Value add(Value a, Value b) const { return (a + b) % p_; }
  Value sub(Value a, Value b) const { return (a + p_ - b) % p_; }
  Value mul(Value a, Value b) const {
    return static_cast<Value>((std::uint64_t(a) * b) % p_);
  }
  Value neg(Value a) const { return (p_ - a) % p_; }
  Value div(Value a, Value b) const {
    if (b == 0) throw InputError("division by zero in F_" + std::to_string(p_));
    return mul(a, inverse(b));
  }
  bool is_zero(Value a) const { return a == 0; }
  bool is_negative(Value) const { return false; }  // residues have no sign
  Value abs(Value a) const { return a; }

  Value from_decimal(const std::string& digits) const {
    Value r = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw InputError("bad integer literal '" + digits + "'");
      r = static_cast<Value>((std::uint64_t(r) * 10 + (c - '0')) % p_);
    }
    return r;
  }

  std::string to_string(Value a) const { return std::to_string(a); }

  std::string name() const { return "f" + std::to_string(p_); }
  bool operator==(const PrimeField& other) const { return p_ == other.p_; }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  Value inverse(Value a) const {
    // Fermat: a^(p-2) mod p.
    std::uint64_t base = a, result = 1;
    std::uint32_t e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<Value>(result);
  }

  std::uint32_t p_;
};

}  // namespace lpa

#endif  // LPA_SCALAR_HPP
