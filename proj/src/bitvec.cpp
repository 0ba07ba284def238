#include "qcforge/bitvec.hpp"

#include "qcforge/error.hpp"

namespace qcforge {

BitVec::BitVec(std::size_t n, std::span<const std::uint64_t> words) : n_(n), words_(words_for(n), 0) {
  for (std::size_t i = 0; i < words_.size() && i < words.size(); ++i) words_[i] = words[i];
  if (n % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
}

BitVec BitVec::from_string(std::string_view s) {
  BitVec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v.set(i, true);
    else if (s[i] != '0') throw ParseError(std::string("invalid binary symbol '") + s[i] + "'");
  }
  return v;
}

BitVec BitVec::slice(std::size_t offset, std::size_t len) const {
  BitVec out(len);
  for (std::size_t i = 0; i < len; ++i)
    if (get(offset + i)) out.set(i, true);
  return out;
}

BitVec BitVec::concat(std::span<const BitVec> parts) {
  std::size_t total = 0;
  for (const BitVec& p : parts) total += p.size();
  BitVec out(total);
  std::size_t at = 0;
  for (const BitVec& p : parts) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.get(i)) out.set(at + i, true);
    at += p.size();
  }
  return out;
}

std::string BitVec::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

Gf4Vec::Gf4Vec(BitVec ones, BitVec ws) : ones_(std::move(ones)), ws_(std::move(ws)) {
  if (ones_.size() != ws_.size()) throw PreconditionError("GF(4) planes differ in length");
}

Gf4Vec Gf4Vec::from_string(std::string_view s) {
  Gf4Vec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v.set(i, Gf4::from_char(s[i]));
  return v;
}

std::size_t Gf4Vec::weight() const {
  std::size_t w = 0;
  const auto a = ones_.words(), b = ws_.words();
  for (std::size_t i = 0; i < a.size(); ++i) w += std::size_t(std::popcount(a[i] | b[i]));
  return w;
}

Gf4Vec Gf4Vec::scaled(Gf4 c) const {
  switch (c.bits()) {
    case 0: return Gf4Vec(size());
    case 1: return *this;
    case 2: return Gf4Vec(ws_, ones_ ^ ws_);   // w(a + bw) = b + (a + b)w
    default: return Gf4Vec(ones_ ^ ws_, ones_);  // w^2(a + bw) = (a + b) + aw
  }
}

Gf4Vec Gf4Vec::conj() const { return Gf4Vec(ones_ ^ ws_, ws_); }

Gf4 Gf4Vec::euclidean(const Gf4Vec& y) const {
  std::size_t lo = 0, hi = 0;
  const auto a0 = ones_.words(), a1 = ws_.words(), b0 = y.ones_.words(), b1 = y.ws_.words();
  for (std::size_t i = 0; i < a0.size(); ++i) {
    lo += std::size_t(std::popcount((a0[i] & b0[i]) ^ (a1[i] & b1[i])));
    hi += std::size_t(std::popcount((a0[i] & b1[i]) ^ (a1[i] & b0[i]) ^ (a1[i] & b1[i])));
  }
  return Gf4(bool(lo & 1u), bool(hi & 1u));
}

Gf4 Gf4Vec::hermitian(const Gf4Vec& y) const { return euclidean(y.conj()); }

std::string Gf4Vec::to_string() const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) s[i] = get(i).to_char();
  return s;
}

}  // namespace qcforge
