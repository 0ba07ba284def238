#pragma once

// Arithmetic over GF(2), GF(4) = GF(2)(w) with w^2 + w + 1 = 0, binary
// polynomials, and the quotient ring R = F2[Y]/(Y^m - 1).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcforge {

/// Element a + b*w of GF(4), stored as two bits: bit 0 = a, bit 1 = b.
/// Hence 0, 1, w = 2, w^2 = 1 + w = 3.
class Gf4 {
 public:
  constexpr Gf4() = default;
  constexpr explicit Gf4(std::uint8_t bits) : v_(bits & 3u) {}
  constexpr Gf4(bool one_part, bool w_part) : v_((one_part ? 1u : 0u) | (w_part ? 2u : 0u)) {}

  static constexpr Gf4 zero() { return Gf4(std::uint8_t{0}); }
  static constexpr Gf4 one() { return Gf4(std::uint8_t{1}); }
  static constexpr Gf4 w() { return Gf4(std::uint8_t{2}); }
  static constexpr Gf4 w2() { return Gf4(std::uint8_t{3}); }

  constexpr std::uint8_t bits() const { return v_; }
  constexpr bool one_part() const { return v_ & 1u; }
  constexpr bool w_part() const { return v_ & 2u; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Gf4 operator+(Gf4 a, Gf4 b) { return Gf4(std::uint8_t(a.v_ ^ b.v_)); }
  friend constexpr Gf4 operator-(Gf4 a, Gf4 b) { return a + b; }
  friend constexpr Gf4 operator*(Gf4 a, Gf4 b) {
    // (a0 + a1 w)(b0 + b1 w) = a0 b0 + a1 b1 + (a0 b1 + a1 b0 + a1 b1) w
    const unsigned a0 = a.v_ & 1u, a1 = a.v_ >> 1, b0 = b.v_ & 1u, b1 = b.v_ >> 1;
    const unsigned lo = (a0 & b0) ^ (a1 & b1);
    const unsigned hi = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
    return Gf4(std::uint8_t(lo | (hi << 1)));
  }
  friend constexpr bool operator==(Gf4, Gf4) = default;

  /// Multiplicative inverse; zero has none and maps to zero.
  constexpr Gf4 inverse() const {
    constexpr std::uint8_t inv[4] = {0, 1, 3, 2};
    return Gf4(inv[v_]);
  }

  /// Frobenius x -> x^2 (the conjugation of GF(4) over GF(2)).
  constexpr Gf4 conj() const { return *this * *this; }

  /// '0', '1', 'w', 'W' (W = w^2).
  char to_char() const;
  static Gf4 from_char(char c);

 private:
  std::uint8_t v_ = 0;
};

constexpr Gf4 gf4_mul(Gf4 a, Gf4 b) { return a * b; }
constexpr Gf4 gf4_conj(Gf4 a) { return a.conj(); }

/// Polynomial over GF(2), coefficient i stored at bit i (lowest degree first).
/// Always normalized: no trailing zero words.
class PolyF2 {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr std::size_t kZeroDegree = std::numeric_limits<std::size_t>::max();

  PolyF2() = default;
  static PolyF2 from_word(std::uint64_t bits);
  static PolyF2 monomial(std::size_t degree);
  /// Y^n + 1 (= Y^n - 1 over GF(2)).
  static PolyF2 x_n_minus_1(std::size_t n);
  /// Big-endian coefficient string, "1011" = Y^3 + Y + 1.
  static PolyF2 from_string(std::string_view s);

  bool is_zero() const { return words_.empty(); }
  std::size_t degree() const;
  bool coeff(std::size_t i) const;
  void set_coeff(std::size_t i, bool value);
  const std::vector<std::uint64_t>& words() const { return words_; }
  /// Low 64 coefficients; only meaningful when degree() < 64.
  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  std::string to_string() const;
  /// "Y^3+Y+1"; the zero polynomial prints as "0".
  std::string to_human(char var = 'Y') const;

  PolyF2& operator+=(const PolyF2& o);
  friend PolyF2 operator+(PolyF2 a, const PolyF2& b) { return a += b; }
  friend PolyF2 operator*(const PolyF2& a, const PolyF2& b);
  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<PolyF2, PolyF2> divmod(const PolyF2& num, const PolyF2& den);
  friend PolyF2 operator%(const PolyF2& a, const PolyF2& b) { return divmod(a, b).second; }
  friend PolyF2 operator/(const PolyF2& a, const PolyF2& b) { return divmod(a, b).first; }
  bool divides(const PolyF2& other) const { return (other % *this).is_zero(); }

  friend bool operator==(const PolyF2&, const PolyF2&) = default;
  /// Orders by degree, then by bit pattern read as an integer.
  friend std::strong_ordering operator<=>(const PolyF2& a, const PolyF2& b);

 private:
  void normalize();
  std::vector<std::uint64_t> words_;
};

PolyF2 poly_gcd(PolyF2 a, PolyF2 b);

/// x^{deg p} p(1/x). Rejects zero and polynomials with zero constant term.
PolyF2 poly_reciprocal(const PolyF2& p);

/// Ben-Or irreducibility test over GF(2).
bool is_irreducible(const PolyF2& p);

/// Complete factorization Y^m - 1 = delta * g_1...g_s * h_1 h_1* ... h_t h_t*.
struct Factorization {
  int m = 0;
  int delta = 1;
  /// Self-reciprocal irreducible factors, ordered by (degree, bits).
  std::vector<PolyF2> self_reciprocal;
  /// Reciprocal pairs (h, h*), smaller bit pattern first, pairs ordered by h.
  std::vector<std::pair<PolyF2, PolyF2>> pairs;

  std::size_t s() const { return self_reciprocal.size(); }
  std::size_t t() const { return pairs.size(); }
  /// All factors: g_1..g_s, then h_1, h_1*, ..., h_t, h_t*.
  std::vector<PolyF2> all_factors() const;
  PolyF2 product() const;
};

/// Largest modulus supported by the ring and factorization code.
inline constexpr int kMaxModulus = 63;

/// Requires m odd with 1 <= m <= kMaxModulus.
Factorization factor_cyclotomic(int m);

/// Element of R = F2[Y]/(Y^m - 1).
class RingElem {
 public:
  RingElem() = default;
  /// Reduces p modulo Y^m - 1.
  RingElem(int m, const PolyF2& p);
  static RingElem zero(int m) { return RingElem(m, PolyF2{}); }
  static RingElem one(int m) { return RingElem(m, PolyF2::monomial(0)); }
  static RingElem y_power(int m, std::size_t e) { return RingElem(m, PolyF2::monomial(e % std::size_t(m))); }

  int modulus() const { return m_; }
  const PolyF2& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  friend RingElem operator+(const RingElem& a, const RingElem& b);
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  friend bool operator==(const RingElem&, const RingElem&) = default;

 private:
  int m_ = 1;
  PolyF2 poly_;
};

/// Y -> Y^{m-1}, i.e. coefficient i moves to (m - i) mod m.
RingElem ring_conj(const RingElem& x);

}  // namespace qcforge
