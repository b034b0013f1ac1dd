#include "ginv/field.hpp"

#include <stdexcept>

namespace ginv {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= kModulusLimit) throw FieldError(std::to_string(p) + " exceeds the modulus limit 2^31");
  if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
  return Field(static_cast<std::uint32_t>(p));
}

std::string Field::name() const {
  return is_rational() ? "Q" : "GF(" + std::to_string(modulus_) + ")";
}

namespace {

std::uint32_t reduce(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Scalar Scalar::zero(Field f) { return from_int(f, 0); }
Scalar Scalar::one(Field f) { return from_int(f, 1); }

Scalar Scalar::from_int(Field f, long v) {
  if (f.is_rational()) return Scalar(mpq_class(v));
  const long p = f.modulus();
  return Scalar(Residue{static_cast<std::uint32_t>(((v % p) + p) % p), f.modulus()});
}

Scalar Scalar::from_mpz(Field f, const mpz_class& v) {
  if (f.is_rational()) return Scalar(mpq_class(v));
  return Scalar(Residue{reduce(v, f.modulus()), f.modulus()});
}

Scalar Scalar::from_fraction(Field f, const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw FieldError("zero denominator");
  if (f.is_rational()) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
  }
  Scalar d = from_mpz(f, den);
  if (d.is_zero()) throw FieldError("denominator " + den.get_str() + " vanishes mod " + std::to_string(f.modulus()));
  return from_mpz(f, num) / d;
}

Field Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return Field(r->modulus);
  return Field::rationals();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  return std::get<mpq_class>(value_) == 1;
}

const mpq_class& Scalar::rational() const { return std::get<mpq_class>(value_); }
std::uint32_t Scalar::residue() const { return std::get<Residue>(value_).value; }

void Scalar::same_field(const Scalar& o) const {
  const auto* a = std::get_if<Residue>(&value_);
  const auto* b = std::get_if<Residue>(&o.value_);
  if ((a == nullptr) != (b == nullptr) || (a && a->modulus != b->modulus)) {
    throw FieldError("field mismatch: " + field().name() + " vs " + o.field().name());
  }
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
  }
  return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  same_field(o);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->value = static_cast<std::uint32_t>((std::uint64_t{r->value} + std::get<Residue>(o.value_).value) % r->modulus);
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  same_field(o);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->value = static_cast<std::uint32_t>(std::uint64_t{r->value} * std::get<Residue>(o.value_).value % r->modulus);
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (const auto* r = std::get_if<Residue>(&value_)) {
    // Fermat: p is prime.
    return Scalar(Residue{pow_mod(r->value, r->modulus - 2, r->modulus), r->modulus});
  }
  mpq_class q = 1 / std::get<mpq_class>(value_);
  q.canonicalize();
  return Scalar(std::move(q));
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.same_field(b);
  if (const auto* r = std::get_if<Scalar::Residue>(&a.value_)) {
    return r->value == std::get<Scalar::Residue>(b.value_).value;
  }
  return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return std::get<mpq_class>(value_).get_str();
}

}  // namespace ginv
