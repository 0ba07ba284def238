#include "qcforge/lincode.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <random>
#include <thread>

#include "qcforge/error.hpp"

namespace qcforge {

const char* to_string(SelfDualType t) {
  switch (t) {
    case SelfDualType::TypeI: return "TypeI";
    case SelfDualType::TypeII: return "TypeII";
    default: return "NotSelfDual";
  }
}

// ------------------------------------------------------------- BinaryCode

BinaryCode BinaryCode::zero(std::size_t n) {
  BinaryCode c;
  c.n_ = n;
  return c;
}

BinaryCode BinaryCode::full(std::size_t n) {
  std::vector<BitVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    BitVec v(n);
    v.set(i, true);
    rows.push_back(std::move(v));
  }
  return from_rows(n, rows);
}

BinaryCode BinaryCode::from_rows(std::size_t n, std::span<const BitVec> rows) {
  BinaryCode c;
  c.n_ = n;
  std::vector<BitVec> work;
  work.reserve(rows.size());
  for (const BitVec& r : rows) {
    if (r.size() != n) throw PreconditionError("from_rows: row length differs from n");
    if (!r.is_zero()) work.push_back(r);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < work.size(); ++col) {
    std::size_t sel = rank;
    while (sel < work.size() && !work[sel].get(col)) ++sel;
    if (sel == work.size()) continue;
    std::swap(work[rank], work[sel]);
    for (std::size_t r = 0; r < work.size(); ++r)
      if (r != rank && work[r].get(col)) work[r] ^= work[rank];
    c.pivots_.push_back(col);
    ++rank;
  }
  work.resize(rank);
  c.rows_ = std::move(work);
  return c;
}

BitVec BinaryCode::reduce(BitVec v) const {
  if (v.size() != n_) throw PreconditionError("reduce: vector length differs from code length");
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v.get(pivots_[i])) v ^= rows_[i];
  return v;
}

std::vector<std::uint64_t> BinaryCode::packed_rows() const {
  const std::size_t w = words_for(n_);
  std::vector<std::uint64_t> out;
  out.reserve(rows_.size() * w);
  for (const BitVec& r : rows_) out.insert(out.end(), r.words().begin(), r.words().end());
  return out;
}

// --------------------------------------------------------- QuaternaryCode

QuaternaryCode QuaternaryCode::zero(std::size_t n) {
  QuaternaryCode c;
  c.n_ = n;
  return c;
}

QuaternaryCode QuaternaryCode::full(std::size_t n) {
  std::vector<Gf4Vec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Gf4Vec v(n);
    v.set(i, Gf4::one());
    rows.push_back(std::move(v));
  }
  return from_rows(n, rows);
}

QuaternaryCode QuaternaryCode::from_rows(std::size_t n, std::span<const Gf4Vec> rows) {
  QuaternaryCode c;
  c.n_ = n;
  std::vector<Gf4Vec> work;
  for (const Gf4Vec& r : rows) {
    if (r.size() != n) throw PreconditionError("from_rows: row length differs from n");
    if (!r.is_zero()) work.push_back(r);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < work.size(); ++col) {
    std::size_t sel = rank;
    while (sel < work.size() && work[sel].get(col).is_zero()) ++sel;
    if (sel == work.size()) continue;
    std::swap(work[rank], work[sel]);
    work[rank] = work[rank].scaled(work[rank].get(col).inverse());
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (r == rank) continue;
      const Gf4 e = work[r].get(col);
      if (!e.is_zero()) work[r] += work[rank].scaled(e);
    }
    c.pivots_.push_back(col);
    ++rank;
  }
  work.resize(rank);
  c.rows_ = std::move(work);
  return c;
}

Gf4Vec QuaternaryCode::reduce(Gf4Vec v) const {
  if (v.size() != n_) throw PreconditionError("reduce: vector length differs from code length");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Gf4 e = v.get(pivots_[i]);
    if (!e.is_zero()) v += rows_[i].scaled(e);
  }
  return v;
}

std::vector<std::uint64_t> QuaternaryCode::packed_binary_generators() const {
  std::vector<std::uint64_t> out;
  auto push = [&](const Gf4Vec& g) {
    out.insert(out.end(), g.ones().words().begin(), g.ones().words().end());
    out.insert(out.end(), g.ws().words().begin(), g.ws().words().end());
  };
  for (const Gf4Vec& g : rows_) {
    push(g);
    push(g.scaled(Gf4::w()));
  }
  return out;
}

// ------------------------------------------------------------------ duals

BinaryCode euclidean_dual(const BinaryCode& c) {
  const std::size_t n = c.length();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : c.pivots()) is_pivot[p] = true;
  std::vector<BitVec> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    BitVec v(n);
    v.set(j, true);
    for (std::size_t i = 0; i < c.dimension(); ++i)
      if (c.rows()[i].get(j)) v.set(c.pivots()[i], true);
    rows.push_back(std::move(v));
  }
  return BinaryCode::from_rows(n, rows);
}

QuaternaryCode euclidean_dual(const QuaternaryCode& c) {
  const std::size_t n = c.length();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : c.pivots()) is_pivot[p] = true;
  std::vector<Gf4Vec> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Gf4Vec v(n);
    v.set(j, Gf4::one());
    // Row i meets v in G[i][p_i] * v[p_i] + G[i][j] * 1; characteristic 2.
    for (std::size_t i = 0; i < c.dimension(); ++i) v.set(c.pivots()[i], c.rows()[i].get(j));
    rows.push_back(std::move(v));
  }
  return QuaternaryCode::from_rows(n, rows);
}

QuaternaryCode conjugate(const QuaternaryCode& c) {
  std::vector<Gf4Vec> rows;
  for (const Gf4Vec& r : c.rows()) rows.push_back(r.conj());
  return QuaternaryCode::from_rows(c.length(), rows);
}

QuaternaryCode hermitian_dual(const QuaternaryCode& c) { return conjugate(euclidean_dual(c)); }

bool is_self_dual(const BinaryCode& c) {
  if (c.length() != 2 * c.dimension()) return false;
  const auto& rows = c.rows();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j)
      if (rows[i].dot(rows[j])) return false;
  return true;
}

bool is_self_dual(const QuaternaryCode& c) {
  if (c.length() != 2 * c.dimension()) return false;
  const auto& rows = c.rows();
  // The Hermitian form is sesquilinear, so orthogonality of basis pairs (in
  // both orders, which are conjugates of each other) covers the span.
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j)
      if (!rows[i].hermitian(rows[j]).is_zero()) return false;
  return true;
}

bool is_self_dual(const BinaryCode& c, InnerProduct ip) {
  if (ip != InnerProduct::Euclidean) throw PreconditionError("binary codes use the Euclidean inner product");
  return is_self_dual(c);
}

bool is_self_dual(const QuaternaryCode& c, InnerProduct ip) {
  if (ip != InnerProduct::Hermitian) throw PreconditionError("quaternary codes use the Hermitian inner product");
  return is_self_dual(c);
}

// ------------------------------------------------------------ cyclic code

BinaryCode cyclic_code(const PolyF2& g, std::size_t n) {
  if (n == 0) throw PreconditionError("cyclic_code: n must be positive");
  if (g.is_zero() || !g.divides(PolyF2::x_n_minus_1(n)))
    throw PreconditionError("cyclic_code: generator polynomial does not divide Y^n - 1");
  const std::size_t r = g.degree();
  std::vector<BitVec> rows;
  for (std::size_t shift = 0; shift + r < n; ++shift) {
    BitVec v(n);
    for (std::size_t i = 0; i <= r; ++i)
      if (g.coeff(i)) v.set(i + shift, true);
    rows.push_back(std::move(v));
  }
  return BinaryCode::from_rows(n, rows);
}

// ---------------------------------------------------------- permutations

BitVec permute(const BitVec& v, std::span<const std::size_t> perm) {
  if (perm.size() != v.size()) throw PreconditionError("permutation size differs from vector length");
  BitVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.get(i)) out.set(perm[i], true);
  return out;
}

BinaryCode permute(const BinaryCode& c, std::span<const std::size_t> perm) {
  std::vector<BitVec> rows;
  for (const BitVec& r : c.rows()) rows.push_back(permute(r, perm));
  return BinaryCode::from_rows(c.length(), rows);
}

Gf4Vec permute(const Gf4Vec& v, std::span<const std::size_t> perm) {
  return Gf4Vec(permute(v.ones(), perm), permute(v.ws(), perm));
}

QuaternaryCode permute(const QuaternaryCode& c, std::span<const std::size_t> perm) {
  std::vector<Gf4Vec> rows;
  for (const Gf4Vec& r : c.rows()) rows.push_back(permute(r, perm));
  return QuaternaryCode::from_rows(c.length(), rows);
}

// ------------------------------------------------------ WeightEnumerator

WeightEnumerator::WeightEnumerator(std::size_t n, std::vector<std::uint64_t> coeffs, std::optional<std::size_t> cap)
    : n_(n), a_(std::move(coeffs)), cap_(cap) {
  a_.resize(n + 1, 0);
  if (cap_ && *cap_ >= n) cap_.reset();
  if (cap_)
    for (std::size_t i = *cap_ + 1; i <= n; ++i) a_[i] = 0;
}

std::optional<std::size_t> WeightEnumerator::min_distance() const {
  for (std::size_t i = 1; i <= known_through(); ++i)
    if (a_[i]) return i;
  return std::nullopt;
}

std::uint64_t WeightEnumerator::total() const {
  std::uint64_t t = 0;
  for (std::uint64_t x : a_) t += x;
  return t;
}

std::string WeightEnumerator::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!a_[i]) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + ':' + std::to_string(a_[i]);
  }
  return out;
}

WeightEnumerator WeightEnumerator::parse(std::string_view text, std::size_t n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view tok = text.substr(pos, end - pos);
    const std::size_t colon = tok.find(':');
    std::size_t i = 0;
    std::uint64_t v = 0;
    if (colon == std::string_view::npos ||
        std::from_chars(tok.data(), tok.data() + colon, i).ec != std::errc() ||
        std::from_chars(tok.data() + colon + 1, tok.data() + tok.size(), v).ec != std::errc())
      throw ParseError("malformed enumerator term '" + std::string(tok) + "'");
    if (i > n) throw ParseError("enumerator weight exceeds code length");
    a[i] = v;
    pos = end;
  }
  return WeightEnumerator(n, std::move(a));
}

// ------------------------------------------------------ Gray enumeration

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QCFORGE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) hw = std::min(hw, unsigned(cap));
  }
  return hw;
}

namespace {

// Runs f(worker, begin, end) over contiguous chunks of [0, total).
template <class F>
void parallel_chunks(std::uint64_t total, unsigned threads, F&& f) {
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total));
  if (workers == 1) {
    f(0u, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  for (std::uint64_t t = 0; t < workers; ++t) {
    const std::uint64_t b = total * t / workers, e = total * (t + 1) / workers;
    pool.emplace_back([&f, t, b, e] { f(unsigned(t), b, e); });
  }
  for (auto& th : pool) th.join();
}

// Shuffles the rows and adds random earlier rows to each, keeping the span.
void reorder_basis(std::vector<std::uint64_t>& rows, std::size_t k, std::size_t stride, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::uint64_t> out(rows.size());
  for (std::size_t i = 0; i < k; ++i)
    std::copy_n(rows.begin() + std::ptrdiff_t(order[i] * stride), stride, out.begin() + std::ptrdiff_t(i * stride));
  for (std::size_t i = 1; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (rng() & 1u)
        for (std::size_t w = 0; w < stride; ++w) out[i * stride + w] ^= out[j * stride + w];
  rows = std::move(out);
}

struct PreparedBasis {
  std::vector<std::uint64_t> rows;
  kernels::GrayBasis basis;
};

PreparedBasis prepare(std::vector<std::uint64_t> rows, std::size_t k, std::size_t words, std::size_t planes,
                      const EnumOptions& opts) {
  PreparedBasis p;
  p.rows = std::move(rows);
  if (opts.order_seed) reorder_basis(p.rows, k, words * planes, *opts.order_seed);
  p.basis = kernels::GrayBasis{p.rows, k, words, planes};
  return p;
}

void check_budget(std::size_t info_bits, const EnumOptions& opts, const char* what) {
  if (info_bits > opts.max_info_bits)
    throw BudgetExceeded(std::string(what) + ": 2^" + std::to_string(info_bits) +
                         " codewords exceed the enumeration budget of 2^" + std::to_string(opts.max_info_bits) +
                         "; use a capped enumerator or min_distance with early_stop");
}

WeightEnumerator run_histogram(const kernels::GrayBasis& basis, std::size_t n, std::optional<std::size_t> cap,
                               const EnumOptions& opts) {
  const kernels::Isa isa = opts.isa.value_or(kernels::active_isa());
  const std::uint64_t domain = kernels::domain_size(basis, isa);
  const unsigned threads = resolve_threads(opts.threads);
  const std::size_t bins = basis.words * 64 + 1;
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(bins, 0));
  parallel_chunks(domain, threads, [&](unsigned t, std::uint64_t b, std::uint64_t e) {
    kernels::weight_histogram(basis, isa, b, e, partial[t]);
  });
  std::vector<std::uint64_t> a(n + 1, 0);
  for (const auto& h : partial)
    for (std::size_t i = 0; i <= n; ++i) a[i] += h[i];
  return WeightEnumerator(n, std::move(a), cap);
}

DistanceResult run_min(const kernels::GrayBasis& basis, std::optional<std::size_t> early_stop,
                       const EnumOptions& opts) {
  const kernels::Isa isa = opts.isa.value_or(kernels::active_isa());
  const std::uint64_t domain = kernels::domain_size(basis, isa);
  const unsigned threads = resolve_threads(opts.threads);
  const std::uint32_t stop_at = early_stop ? std::uint32_t(*early_stop) : 0;
  std::vector<kernels::MinWeight> partial(threads);
  std::atomic<bool> cancel{false};
  parallel_chunks(domain, threads, [&](unsigned t, std::uint64_t b, std::uint64_t e) {
    partial[t] = kernels::min_weight(basis, isa, b, e, stop_at, &cancel);
    if (partial[t].stopped) cancel.store(true, std::memory_order_relaxed);
  });
  DistanceResult res;
  std::uint32_t best = kernels::kNoWeight;
  for (const auto& p : partial) {
    best = std::min(best, p.weight);
    res.bound_only = res.bound_only || p.stopped;
  }
  res.weight = best;
  return res;
}

}  // namespace

DistanceResult min_distance(const BinaryCode& c, std::optional<std::size_t> early_stop, const EnumOptions& opts) {
  if (c.dimension() == 0) throw PreconditionError("min_distance: the zero code has no nonzero codewords");
  check_budget(c.dimension(), opts, "min_distance");
  auto prepared = prepare(c.packed_rows(), c.dimension(), words_for(c.length()), 1, opts);
  return run_min(prepared.basis, early_stop, opts);
}

DistanceResult min_distance(const QuaternaryCode& c, std::optional<std::size_t> early_stop,
                            const EnumOptions& opts) {
  if (c.dimension() == 0) throw PreconditionError("min_distance: the zero code has no nonzero codewords");
  check_budget(2 * c.dimension(), opts, "min_distance");
  auto prepared = prepare(c.packed_binary_generators(), 2 * c.dimension(), words_for(c.length()), 2, opts);
  return run_min(prepared.basis, early_stop, opts);
}

WeightEnumerator weight_enumerator(const BinaryCode& c, std::optional<std::size_t> cap, const EnumOptions& opts) {
  check_budget(c.dimension(), opts, "weight_enumerator");
  auto prepared = prepare(c.packed_rows(), c.dimension(), std::max<std::size_t>(1, words_for(c.length())), 1, opts);
  return run_histogram(prepared.basis, c.length(), cap, opts);
}

WeightEnumerator weight_enumerator(const QuaternaryCode& c, std::optional<std::size_t> cap,
                                   const EnumOptions& opts) {
  check_budget(2 * c.dimension(), opts, "weight_enumerator");
  auto prepared = prepare(c.packed_binary_generators(), 2 * c.dimension(),
                          std::max<std::size_t>(1, words_for(c.length())), 2, opts);
  return run_histogram(prepared.basis, c.length(), cap, opts);
}

// ------------------------------------------------------- classification

SelfDualType classify_type(const WeightEnumerator& w, bool self_dual) {
  if (!w.complete()) throw PreconditionError("classify_type needs a complete weight enumerator");
  if (!self_dual) return SelfDualType::NotSelfDual;
  for (std::size_t i = 0; i <= w.length(); ++i)
    if (i % 4 != 0 && w[i] != 0) return SelfDualType::TypeI;
  return SelfDualType::TypeII;
}

bool is_prime(unsigned m) {
  if (m < 2) return false;
  for (unsigned d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::uint64_t>> check_divisibility(const WeightEnumerator& w, unsigned m) {
  if (!is_prime(m)) throw PreconditionError("check_divisibility: m must be prime");
  std::vector<std::pair<std::size_t, std::uint64_t>> bad;
  for (std::size_t i = 0; i <= w.known_through(); ++i)
    if (i % m != 0 && w[i] % m != 0) bad.emplace_back(i, w[i]);
  return bad;
}

}  // namespace qcforge
