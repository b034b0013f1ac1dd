#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace ginv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different fields, or an invalid field descriptor.
class FieldError : public Error {
 public:
  using Error::Error;
};

/// Largest admissible prime modulus (exclusive).
inline constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 31;

bool is_prime(std::uint64_t n);

/// The coefficient field: the rationals, or GF(p) for a prime p < 2^31.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field{}; }
  /// Throws FieldError if p is not a prime below 2^31.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return modulus_ == 0; }
  /// 0 for the rationals.
  std::uint32_t modulus() const { return modulus_; }
  /// "Q" or "GF(p)".
  std::string name() const;

  auto operator<=>(const Field&) const = default;

 private:
  friend class Scalar;
  constexpr explicit Field(std::uint32_t p) : modulus_(p) {}
  std::uint32_t modulus_ = 0;
};

/// An exact field element. Rationals are always reduced with a positive
/// denominator; residues are always in [0, p).
class Scalar {
 public:
  Scalar() = default;  // rational zero

  static Scalar zero(Field f);
  static Scalar one(Field f);
  static Scalar from_int(Field f, long v);
  static Scalar from_mpz(Field f, const mpz_class& v);
  /// Throws FieldError on a zero denominator, or if den is not invertible mod p.
  static Scalar from_fraction(Field f, const mpz_class& num, const mpz_class& den);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  /// Valid only over the rationals.
  const mpq_class& rational() const;
  /// Valid only over GF(p).
  std::uint32_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws std::domain_error on zero.
  Scalar inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "3", "-1/2"; residues print as their canonical representative.
  std::string to_string() const;

 private:
  struct Residue {
    std::uint32_t value = 0;
    std::uint32_t modulus = 2;
  };

  explicit Scalar(Residue r) : value_(r) {}
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}

  void same_field(const Scalar& o) const;

  std::variant<mpq_class, Residue> value_;
};

}  // namespace ginv
