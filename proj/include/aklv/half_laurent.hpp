#pragma once

// Exact arithmetic in Z[q^{1/2}, q^{-1/2}], the coefficient ring of the
// Lusztig-Vogan module. Exponents are stored as integers counting half-steps:
// exponent 2 means q, exponent 1 means q^{1/2}. Values are immutable in
// canonical sparse form (no zero coefficients).

#include <map>
#include <optional>
#include <string>

#include "aklv/basics.hpp"

namespace aklv {

class HalfLaurent {
 public:
  using CoeffMap = std::map<int, BigInt>;  // half-exponent -> nonzero coeff

  HalfLaurent() = default;
  explicit HalfLaurent(const BigInt& c) {
    if (c != 0) coeffs_[0] = c;
  }
  explicit HalfLaurent(Int c) : HalfLaurent(BigInt(c)) {}

  // c * q^{half/2}
  static HalfLaurent monomial(const BigInt& c, int half) {
    HalfLaurent f;
    if (c != 0) f.coeffs_[half] = c;
    return f;
  }
  static HalfLaurent q_pow_half(int half) { return monomial(1, half); }
  static HalfLaurent q() { return monomial(1, 2); }
  static HalfLaurent one() { return HalfLaurent(BigInt(1)); }

  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 && coeffs_.begin()->second == 1;
  }
  BigInt coeff(int half) const {
    auto it = coeffs_.find(half);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }
  int min_half() const;  // throws on zero
  int max_half() const;

  // True iff supported on even half-exponents only (a Laurent polynomial in q).
  bool integral_powers() const;
  // True iff a polynomial in q: integral powers, no negative exponents.
  bool is_poly_in_q() const;
  bool nonneg_coeffs() const;
  // Degree in q of a polynomial with integral powers (max_half/2); throws otherwise.
  int deg_q() const;

  HalfLaurent operator-() const;
  HalfLaurent operator+(const HalfLaurent& o) const;
  HalfLaurent operator-(const HalfLaurent& o) const;
  HalfLaurent operator*(const HalfLaurent& o) const;
  HalfLaurent& operator+=(const HalfLaurent& o) { return *this = *this + o; }
  HalfLaurent& operator-=(const HalfLaurent& o) { return *this = *this - o; }
  HalfLaurent& operator*=(const HalfLaurent& o) { return *this = *this * o; }
  bool operator==(const HalfLaurent& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const HalfLaurent& o) const { return !(*this == o); }
  bool operator<(const HalfLaurent& o) const { return coeffs_ < o.coeffs_; }

  // The bar involution q^{1/2} -> q^{-1/2}.
  HalfLaurent bar() const;

  // Shift by q^{half/2}.
  HalfLaurent shifted(int half) const;

  // Exact division: returns quotient iff o divides *this in the Laurent ring.
  std::optional<HalfLaurent> divide_exact(const HalfLaurent& o) const;

  // Human-readable form, used in diagnostics and CSV cells.
  std::string str() const;

  // Spec serialization: ascending [half-exponent, coefficient] pairs.
  std::vector<std::pair<int, std::string>> serialized() const;

 private:
  CoeffMap coeffs_;
};

// Degree-window separation used by KL-style recursions: given
// g = P - q^d * bar(P) with P a polynomial in q of degree <= (d-1)/2,
// recover P. Throws TheoremViolation("window violation ...") when g is not of
// that shape.
HalfLaurent kl_extract(const HalfLaurent& g, int d);

// gcd up to units (normalized to have positive leading coefficient and
// minimal support exponent 0); gcd(0,0) = 0.
HalfLaurent laurent_gcd(const HalfLaurent& a, const HalfLaurent& b);

// Exact fractions over the Laurent ring, for the duality block solver.
// Kept normalized: den has min_half 0 and positive leading coefficient,
// gcd(num, den) a unit.
class LaurentFrac {
 public:
  LaurentFrac() : num_(), den_(HalfLaurent::one()) {}
  explicit LaurentFrac(const HalfLaurent& n) : num_(n), den_(HalfLaurent::one()) {}
  LaurentFrac(const HalfLaurent& n, const HalfLaurent& d);

  const HalfLaurent& num() const { return num_; }
  const HalfLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  LaurentFrac operator+(const LaurentFrac& o) const;
  LaurentFrac operator-(const LaurentFrac& o) const;
  LaurentFrac operator*(const LaurentFrac& o) const;
  LaurentFrac operator/(const LaurentFrac& o) const;
  LaurentFrac operator-() const;
  bool operator==(const LaurentFrac& o) const { return num_ == o.num_ && den_ == o.den_; }

  // The Laurent value when the denominator is a unit; nullopt otherwise.
  std::optional<HalfLaurent> as_laurent() const;

 private:
  void normalize();
  HalfLaurent num_, den_;
};

}  // namespace aklv
