#include "qcforge/qc.hpp"

#include <algorithm>

#include "qcforge/error.hpp"

namespace qcforge {

void QcShape::validate() const {
  if (ell < 1) throw PreconditionError("quasi-cyclic shape needs ell >= 1");
  if (m < 1 || m % 2 == 0) throw PreconditionError("quasi-cyclic shape needs odd m >= 1");
  if (m > kMaxModulus) throw PreconditionError("quasi-cyclic shape: m above supported maximum 63");
}

namespace {

void require_length(const BitVec& v, QcShape shape, const char* what) {
  shape.validate();
  if (v.size() != shape.length())
    throw PreconditionError(std::string(what) + ": vector length " + std::to_string(v.size()) +
                            " differs from ell * m = " + std::to_string(shape.length()));
}

}  // namespace

ModuleVector phi_map(const BitVec& c, QcShape shape) {
  require_length(c, shape, "phi_map");
  ModuleVector out;
  out.m = shape.m;
  out.entries.reserve(shape.ell);
  for (std::size_t j = 0; j < shape.ell; ++j) {
    PolyF2 p;
    for (int i = 0; i < shape.m; ++i)
      if (c.get(std::size_t(i) * shape.ell + j)) p.set_coeff(std::size_t(i), true);
    out.entries.emplace_back(shape.m, p);
  }
  return out;
}

BitVec phi_inverse(const ModuleVector& x) {
  const std::size_t ell = x.ell();
  BitVec c(ell * std::size_t(x.m));
  for (std::size_t j = 0; j < ell; ++j) {
    const RingElem& e = x.entries[j];
    if (e.modulus() != x.m) throw PreconditionError("phi_inverse: entry modulus differs from vector modulus");
    for (int i = 0; i < x.m; ++i)
      if (e.poly().coeff(std::size_t(i))) c.set(std::size_t(i) * ell + j, true);
  }
  return c;
}

BitVec shift_by_block(const BitVec& c, QcShape shape) {
  require_length(c, shape, "shift_by_block");
  const std::size_t n = shape.length();
  BitVec out(n);
  for (std::size_t pos = 0; pos < n; ++pos)
    if (c.get(pos)) out.set((pos + shape.ell) % n, true);
  return out;
}

bool check_quasi_cyclic(const BinaryCode& c, QcShape shape) {
  shape.validate();
  if (c.length() != shape.length()) throw PreconditionError("check_quasi_cyclic: code length differs from ell * m");
  for (const BitVec& r : c.rows())
    if (!c.contains(shift_by_block(r, shape))) return false;
  return true;
}

RingElem hermitian_ip_module(const ModuleVector& x, const ModuleVector& y) {
  if (x.m != y.m || x.ell() != y.ell()) throw PreconditionError("hermitian_ip_module: shape mismatch");
  RingElem sum = RingElem::zero(x.m);
  for (std::size_t j = 0; j < x.ell(); ++j) sum += x.entries[j] * ring_conj(y.entries[j]);
  return sum;
}

bool prop22_check(const BitVec& a, const BitVec& b, QcShape shape) {
  require_length(a, shape, "prop22_check");
  require_length(b, shape, "prop22_check");
  bool all_shifts_orthogonal = true;
  BitVec cur = a;
  for (int k = 0; k < shape.m; ++k) {
    if (cur.dot(b)) all_shifts_orthogonal = false;
    cur = shift_by_block(cur, shape);
  }
  const bool module_orthogonal = hermitian_ip_module(phi_map(a, shape), phi_map(b, shape)).is_zero();
  return all_shifts_orthogonal == module_orthogonal;
}

// ------------------------------------------------------------------- CRT

namespace {

ComponentCode reduce_component(const BinaryCode& c, QcShape shape, const PolyF2& f) {
  const std::size_t d = f.degree();
  ComponentCode comp;
  comp.modulus = f;
  comp.ell = shape.ell;
  std::vector<BitVec> rows;
  for (const BitVec& r : c.rows()) {
    const ModuleVector mv = phi_map(r, shape);
    BitVec img(shape.ell * d);
    for (std::size_t j = 0; j < shape.ell; ++j) {
      const PolyF2 e = mv.entries[j].poly() % f;
      for (std::size_t b = 0; b < d; ++b)
        if (e.coeff(b)) img.set(j * d + b, true);
    }
    rows.push_back(std::move(img));
  }
  comp.image = BinaryCode::from_rows(shape.ell * d, rows);
  return comp;
}

PolyF2 coordinate(const BitVec& v, std::size_t j, std::size_t d) {
  PolyF2 p;
  for (std::size_t b = 0; b < d; ++b)
    if (v.get(j * d + b)) p.set_coeff(b, true);
  return p;
}

// sum_j x_j * conj(y_j) vanishes in F2[Y]/(a.modulus) for every pair of basis
// vectors, where y lives over the reciprocal factor and conj is Y -> Y^{m-1}.
bool pairing_vanishes(const ComponentCode& a, const ComponentCode& b, int m) {
  const PolyF2& f = a.modulus;
  const std::size_t d = a.degree();
  if (b.degree() != d) return false;
  for (const BitVec& x : a.image.rows())
    for (const BitVec& y : b.image.rows()) {
      PolyF2 sum;
      for (std::size_t j = 0; j < a.ell; ++j) {
        const PolyF2 yc = ring_conj(RingElem(m, coordinate(y, j, d))).poly() % f;
        sum += coordinate(x, j, d) * yc;
      }
      if (!(sum % f).is_zero()) return false;
    }
  return true;
}

}  // namespace

CrtComponents crt_decompose(const BinaryCode& c, QcShape shape) {
  shape.validate();
  if (!check_quasi_cyclic(c, shape)) throw PreconditionError("crt_decompose: code is not quasi-cyclic of index ell");
  CrtComponents parts;
  parts.factorization = factor_cyclotomic(shape.m);
  parts.ell = shape.ell;
  for (const PolyF2& g : parts.factorization.self_reciprocal)
    parts.self_reciprocal.push_back(reduce_component(c, shape, g));
  for (const auto& [h, hs] : parts.factorization.pairs)
    parts.pairs.emplace_back(reduce_component(c, shape, h), reduce_component(c, shape, hs));
  return parts;
}

bool verify_decomposition_selfdual(const CrtComponents& parts) {
  const int m = parts.factorization.m;
  for (const ComponentCode& comp : parts.self_reciprocal) {
    if (2 * comp.image.dimension() != comp.ell * comp.degree()) return false;
    if (!pairing_vanishes(comp, comp, m)) return false;
  }
  for (const auto& [c1, c2] : parts.pairs) {
    if (c1.image.dimension() + c2.image.dimension() != c1.ell * c1.degree()) return false;
    if (!pairing_vanishes(c1, c2, m)) return false;
  }
  return true;
}

QuaternaryCode component_as_gf4(const ComponentCode& comp) {
  if (comp.modulus != PolyF2::from_word(0b111)) throw PreconditionError("component_as_gf4 needs modulus Y^2+Y+1");
  std::vector<Gf4Vec> rows;
  for (const BitVec& r : comp.image.rows()) {
    Gf4Vec v(comp.ell);
    for (std::size_t j = 0; j < comp.ell; ++j) v.set(j, Gf4(r.get(2 * j), r.get(2 * j + 1)));
    rows.push_back(std::move(v));
  }
  return QuaternaryCode::from_rows(comp.ell, rows);
}

// ----------------------------------------------------------------- cubic

BinaryCode construct_cubic(const CubicComponents& parts) {
  const std::size_t ell = parts.c1.length();
  if (parts.c2.length() != ell) throw PreconditionError("construct_cubic: component lengths differ");
  std::vector<BitVec> rows;
  for (const BitVec& x : parts.c1.rows()) {
    const BitVec blocks[3] = {x, x, x};
    rows.push_back(BitVec::concat(blocks));
  }
  for (const Gf4Vec& g : parts.c2.rows())
    for (const Gf4Vec& h : {g, g.scaled(Gf4::w())}) {
      const BitVec blocks[3] = {h.ones(), h.ws(), h.ones() ^ h.ws()};
      rows.push_back(BitVec::concat(blocks));
    }
  return BinaryCode::from_rows(3 * ell, rows);
}

CubicComponents decompose_cubic(const BinaryCode& c) {
  if (c.length() % 3 != 0) throw PreconditionError("decompose_cubic: length is not a multiple of 3");
  const std::size_t ell = c.length() / 3;
  if (ell == 0) return {BinaryCode::zero(0), QuaternaryCode::zero(0)};
  if (!check_quasi_cyclic(c, QcShape{ell, 3}))
    throw PreconditionError("decompose_cubic: code is not quasi-cyclic of index ell");
  std::vector<BitVec> xs;
  std::vector<Gf4Vec> gs;
  for (const BitVec& r : c.rows()) {
    const BitVec b1 = r.slice(0, ell), b2 = r.slice(ell, ell), b3 = r.slice(2 * ell, ell);
    const BitVec s = b1 ^ b2 ^ b3;
    xs.push_back(s);
    gs.emplace_back(b1 ^ s, b2 ^ s);
  }
  return {BinaryCode::from_rows(ell, xs), QuaternaryCode::from_rows(ell, gs)};
}

bool cubic_selfdual_check(const CubicComponents& parts) {
  return is_self_dual(parts.c1) && is_self_dual(parts.c2);
}

std::size_t distance_bound(std::size_t d1, std::size_t d2) { return std::min(3 * d1, 2 * d2); }

std::size_t distance_bound(const CubicComponents& parts, const EnumOptions& opts) {
  if (parts.c1.dimension() == 0 || parts.c2.dimension() == 0)
    throw PreconditionError("distance_bound: both components must be nonzero");
  return distance_bound(min_distance(parts.c1, std::nullopt, opts).weight,
                        min_distance(parts.c2, std::nullopt, opts).weight);
}

}  // namespace qcforge
