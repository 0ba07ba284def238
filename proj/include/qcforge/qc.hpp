#pragma once

// Quasi-cyclic structure: the correspondence between binary codes of length
// ell * m invariant under the ell-shift and R-submodules of R^ell, the CRT
// decomposition over the irreducible factors of Y^m - 1, and the cubic
// (x + a | x + b | x + a + b) construction for m = 3.
//
// Coordinates are laid out as m consecutive blocks of length ell: position
// i * ell + j holds c_{i,j}, and phi sends c to (c_0(Y), ..., c_{ell-1}(Y))
// with c_j(Y) = sum_i c_{i,j} Y^i.

#include <cstddef>
#include <utility>
#include <vector>

#include "qcforge/gf.hpp"
#include "qcforge/lincode.hpp"

namespace qcforge {

struct QcShape {
  std::size_t ell = 1;
  int m = 1;

  std::size_t length() const { return ell * std::size_t(m); }
  /// Throws PreconditionError unless ell >= 1 and m is odd in [1, 63].
  void validate() const;
};

/// Element of R^ell, R = F2[Y]/(Y^m - 1).
struct ModuleVector {
  int m = 1;
  std::vector<RingElem> entries;

  std::size_t ell() const { return entries.size(); }
  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;
};

ModuleVector phi_map(const BitVec& c, QcShape shape);
BitVec phi_inverse(const ModuleVector& x);

/// Rotation by ell positions: the last block moves to the front.
BitVec shift_by_block(const BitVec& c, QcShape shape);

/// True iff shift_by_block maps the code onto itself.
bool check_quasi_cyclic(const BinaryCode& c, QcShape shape);

/// sum_j x_j * conj(y_j) in R.
RingElem hermitian_ip_module(const ModuleVector& x, const ModuleVector& y);

/// Self-test: "(T^{ell k} a) . b = 0 for every k" agrees with
/// "<phi(a), phi(b)> = 0". Never false for a correct implementation.
bool prop22_check(const BitVec& a, const BitVec& b, QcShape shape);

/// Component of a quasi-cyclic code over F = F2[Y]/(f) for one irreducible
/// factor f of Y^m - 1. It is stored as the F2-span of the reduced images:
/// coordinate j occupies bits [j*deg f, (j+1)*deg f), bit e holding the
/// coefficient of Y^e of (c_j mod f).
struct ComponentCode {
  PolyF2 modulus;
  std::size_t ell = 0;
  BinaryCode image;

  std::size_t degree() const { return modulus.degree(); }
  /// Dimension over F = F2[Y]/(f).
  std::size_t field_dimension() const { return image.dimension() / degree(); }
};

struct CrtComponents {
  Factorization factorization;
  std::size_t ell = 0;
  /// One component per self-reciprocal factor g_i (same order).
  std::vector<ComponentCode> self_reciprocal;
  /// (C_j', C_j'') per pair (h_j, h_j*) (same order).
  std::vector<std::pair<ComponentCode, ComponentCode>> pairs;
};

/// Requires check_quasi_cyclic(c, shape).
CrtComponents crt_decompose(const BinaryCode& c, QcShape shape);

/// Each self-reciprocal component is Hermitian self-dual over its field and
/// each pair satisfies C_j'' = (C_j')^perp, the dual taken through the
/// conjugation Y -> Y^{m-1} that identifies F2[Y]/(h*) with F2[Y]/(h).
bool verify_decomposition_selfdual(const CrtComponents& parts);

/// GF(4) view of a degree-2 component (m = 3), identifying Y with w.
QuaternaryCode component_as_gf4(const ComponentCode& comp);

struct CubicComponents {
  BinaryCode c1;
  QuaternaryCode c2;
};

/// {(x + a | x + b | x + a + b) : x in c1, a + w b in c2}; dimension k1 + 2 k2.
BinaryCode construct_cubic(const CubicComponents& parts);

/// Inverse of construct_cubic for codes of length 3 ell that are quasi-cyclic
/// of index ell: C1 = block sums, C2 = (block1 + s) + w (block2 + s).
CubicComponents decompose_cubic(const BinaryCode& c);

/// C1 Euclidean self-dual and C2 Hermitian self-dual.
bool cubic_selfdual_check(const CubicComponents& parts);

/// min(3 d(C1), 2 d(C2)); both components must be nonzero.
std::size_t distance_bound(const CubicComponents& parts, const EnumOptions& opts = {});
std::size_t distance_bound(std::size_t d1, std::size_t d2);

}  // namespace qcforge
