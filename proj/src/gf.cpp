#include "qcforge/gf.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "qcforge/error.hpp"

namespace qcforge {

char Gf4::to_char() const {
  constexpr char chars[4] = {'0', '1', 'w', 'W'};
  return chars[v_];
}

Gf4 Gf4::from_char(char c) {
  switch (c) {
    case '0': return zero();
    case '1': return one();
    case 'w': return w();
    case 'W': return w2();
    default: throw ParseError(std::string("invalid GF(4) symbol '") + c + "'");
  }
}

// ---------------------------------------------------------------- PolyF2

PolyF2 PolyF2::from_word(std::uint64_t bits) {
  PolyF2 p;
  if (bits) p.words_.push_back(bits);
  return p;
}

PolyF2 PolyF2::monomial(std::size_t degree) {
  PolyF2 p;
  p.set_coeff(degree, true);
  return p;
}

PolyF2 PolyF2::x_n_minus_1(std::size_t n) {
  PolyF2 p = monomial(n);
  p.set_coeff(0, !p.coeff(0));
  return p;
}

PolyF2 PolyF2::from_string(std::string_view s) {
  if (s.empty()) throw ParseError("empty polynomial string");
  PolyF2 p;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = s[i];
    if (c != '0' && c != '1') throw ParseError("polynomial strings use only '0' and '1'");
    if (c == '1') p.set_coeff(n - 1 - i, true);
  }
  return p;
}

std::size_t PolyF2::degree() const {
  if (words_.empty()) return kZeroDegree;
  return (words_.size() - 1) * 64 + (63 - std::countl_zero(words_.back()));
}

bool PolyF2::coeff(std::size_t i) const {
  const std::size_t w = i / 64;
  return w < words_.size() && ((words_[w] >> (i % 64)) & 1u);
}

void PolyF2::set_coeff(std::size_t i, bool value) {
  const std::size_t w = i / 64;
  if (value) {
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (i % 64);
  } else if (w < words_.size()) {
    words_[w] &= ~(std::uint64_t{1} << (i % 64));
    normalize();
  }
}

void PolyF2::normalize() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

std::string PolyF2::to_string() const {
  if (is_zero()) return "0";
  const std::size_t d = degree();
  std::string s(d + 1, '0');
  for (std::size_t i = 0; i <= d; ++i)
    if (coeff(i)) s[d - i] = '1';
  return s;
}

std::string PolyF2::to_human(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = degree() + 1; i-- > 0;) {
    if (!coeff(i)) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += '1';
    } else {
      out += var;
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out;
}

PolyF2& PolyF2::operator+=(const PolyF2& o) {
  if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
  for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
  normalize();
  return *this;
}

PolyF2 operator*(const PolyF2& a, const PolyF2& b) {
  PolyF2 r;
  if (a.is_zero() || b.is_zero()) return r;
  r.words_.assign(a.words_.size() + b.words_.size(), 0);
  for (std::size_t wi = 0; wi < a.words_.size(); ++wi) {
    std::uint64_t bits = a.words_[wi];
    while (bits) {
      const int bit = std::countr_zero(bits);
      bits &= bits - 1;
      const std::size_t shift = wi * 64 + std::size_t(bit);
      const std::size_t ws = shift / 64, bs = shift % 64;
      for (std::size_t j = 0; j < b.words_.size(); ++j) {
        r.words_[ws + j] ^= b.words_[j] << bs;
        if (bs) r.words_[ws + j + 1] ^= b.words_[j] >> (64 - bs);
      }
    }
  }
  r.normalize();
  return r;
}

std::pair<PolyF2, PolyF2> PolyF2::divmod(const PolyF2& num, const PolyF2& den) {
  if (den.is_zero()) throw PreconditionError("polynomial division by zero");
  PolyF2 q, r = num;
  const std::size_t dd = den.degree();
  while (!r.is_zero() && r.degree() >= dd) {
    const std::size_t shift = r.degree() - dd;
    q.set_coeff(shift, true);
    const std::size_t ws = shift / 64, bs = shift % 64;
    if (r.words_.size() < den.words_.size() + ws + 1) r.words_.resize(den.words_.size() + ws + 1, 0);
    for (std::size_t j = 0; j < den.words_.size(); ++j) {
      r.words_[ws + j] ^= den.words_[j] << bs;
      if (bs) r.words_[ws + j + 1] ^= den.words_[j] >> (64 - bs);
    }
    r.normalize();
  }
  return {q, r};
}

std::strong_ordering operator<=>(const PolyF2& a, const PolyF2& b) {
  if (a.words_.size() != b.words_.size()) return a.words_.size() <=> b.words_.size();
  for (std::size_t i = a.words_.size(); i-- > 0;)
    if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
  return std::strong_ordering::equal;
}

PolyF2 poly_gcd(PolyF2 a, PolyF2 b) {
  while (!b.is_zero()) {
    PolyF2 r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

PolyF2 poly_reciprocal(const PolyF2& p) {
  if (p.is_zero()) throw PreconditionError("reciprocal of the zero polynomial");
  if (!p.coeff(0)) throw PreconditionError("reciprocal requires a nonzero constant term");
  const std::size_t d = p.degree();
  PolyF2 r;
  for (std::size_t i = 0; i <= d; ++i)
    if (p.coeff(i)) r.set_coeff(d - i, true);
  return r;
}

bool is_irreducible(const PolyF2& p) {
  if (p.is_zero()) return false;
  const std::size_t d = p.degree();
  if (d == 0) return false;
  if (d == 1) return true;
  const PolyF2 y = PolyF2::monomial(1);
  PolyF2 power = y;  // Y^{2^i} mod p
  for (std::size_t i = 1; i <= d / 2; ++i) {
    power = (power * power) % p;
    if (poly_gcd(p, power + y).degree() != 0) return false;
  }
  return true;
}

// --------------------------------------------------------- Factorization

std::vector<PolyF2> Factorization::all_factors() const {
  std::vector<PolyF2> out = self_reciprocal;
  for (const auto& [h, hs] : pairs) {
    out.push_back(h);
    out.push_back(hs);
  }
  return out;
}

PolyF2 Factorization::product() const {
  PolyF2 prod = PolyF2::monomial(0);
  for (const PolyF2& f : all_factors()) prod = prod * f;
  return prod;
}

namespace {

int deg64(std::uint64_t p) { return 63 - std::countl_zero(p); }

// Divides num by den over GF(2); returns remainder, writes quotient.
std::uint64_t divmod64(std::uint64_t num, std::uint64_t den, std::uint64_t& quot) {
  const int dd = deg64(den);
  quot = 0;
  while (num && deg64(num) >= dd) {
    const int shift = deg64(num) - dd;
    quot |= std::uint64_t{1} << shift;
    num ^= den << shift;
  }
  return num;
}

// Sizes of the 2-cyclotomic cosets modulo m, i.e. the degrees of the
// irreducible factors of Y^m - 1.
std::map<int, int> coset_sizes(int m) {
  std::map<int, int> sizes;
  std::vector<bool> seen(std::size_t(m), false);
  for (int start = 0; start < m; ++start) {
    if (seen[std::size_t(start)]) continue;
    int size = 0;
    for (int x = start; !seen[std::size_t(x)]; x = (2 * x) % m) {
      seen[std::size_t(x)] = true;
      ++size;
    }
    ++sizes[size];
  }
  return sizes;
}

}  // namespace

Factorization factor_cyclotomic(int m) {
  if (m < 1) throw PreconditionError("factor_cyclotomic: m must be positive");
  if (m % 2 == 0) throw PreconditionError("factor_cyclotomic: m must be odd (gcd(m, 2) = 1)");
  if (m > kMaxModulus) throw PreconditionError("factor_cyclotomic: m above supported maximum 63");

  // Trial division by monic polynomials of ascending degree. Only degrees that
  // occur as cyclotomic coset sizes are tried, and once a single factor is left
  // the remaining cofactor is that factor.
  std::map<int, int> expected = coset_sizes(m);
  auto remaining = [&] {
    int total = 0;
    for (const auto& [deg, count] : expected) total += count;
    return total;
  };
  std::uint64_t rest = (m == 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << m)) | 1u;
  std::vector<std::uint64_t> found;
  for (auto it = expected.begin(); it != expected.end() && remaining() > 1; ++it) {
    const int d = it->first;
    const std::uint64_t lo = (std::uint64_t{1} << d) | 1u;
    const std::uint64_t hi = std::uint64_t{1} << (d + 1);
    for (std::uint64_t cand = lo; cand < hi && it->second > 0 && remaining() > 1; cand += 2) {
      std::uint64_t quot = 0;
      if (divmod64(rest, cand, quot) == 0) {
        found.push_back(cand);
        rest = quot;
        --it->second;
      }
    }
  }
  if (rest != 1) found.push_back(rest);

  Factorization f;
  f.m = m;
  for (std::uint64_t bits : found) {
    const PolyF2 p = PolyF2::from_word(bits);
    const PolyF2 r = poly_reciprocal(p);
    if (r == p) {
      f.self_reciprocal.push_back(p);
    } else if (p < r) {
      f.pairs.emplace_back(p, r);
    }
  }
  std::sort(f.self_reciprocal.begin(), f.self_reciprocal.end());
  std::sort(f.pairs.begin(), f.pairs.end());
  return f;
}

// --------------------------------------------------------------- RingElem

namespace {

PolyF2 fold_mod_ym1(const PolyF2& p, int m) {
  if (p.is_zero()) return p;
  const std::size_t d = p.degree();
  if (d < std::size_t(m)) return p;
  PolyF2 r;
  for (std::size_t i = 0; i <= d; ++i)
    if (p.coeff(i)) {
      const std::size_t j = i % std::size_t(m);
      r.set_coeff(j, !r.coeff(j));
    }
  return r;
}

}  // namespace

RingElem::RingElem(int m, const PolyF2& p) : m_(m), poly_(fold_mod_ym1(p, m)) {
  if (m < 1) throw PreconditionError("ring modulus must be positive");
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  if (a.m_ != b.m_) throw PreconditionError("ring elements have different moduli");
  RingElem r = a;
  r.poly_ += b.poly_;
  return r;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  if (a.m_ != b.m_) throw PreconditionError("ring elements have different moduli");
  return RingElem(a.m_, a.poly_ * b.poly_);
}

RingElem ring_conj(const RingElem& x) {
  const int m = x.modulus();
  PolyF2 r;
  if (!x.is_zero())
    for (std::size_t i = 0; i <= x.poly().degree(); ++i)
      if (x.poly().coeff(i)) r.set_coeff((std::size_t(m) - i) % std::size_t(m), true);
  return RingElem(m, r);
}

}  // namespace qcforge
