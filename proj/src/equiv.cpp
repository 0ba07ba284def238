#include "qcforge/equiv.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>

#include "qcforge/error.hpp"

namespace qcforge {

// ------------------------------------------------------------------ hashing

namespace {

constexpr std::uint64_t kC1 = 0x87c37b91114253d5ULL;
constexpr std::uint64_t kC2 = 0x4cf5ad432745937fULL;

constexpr std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

constexpr std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  return fmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

}  // namespace

Hash128 digest128(std::span<const std::uint64_t> words) {
  std::uint64_t h1 = 0x243f6a8885a308d3ULL, h2 = 0x13198a2e03707344ULL;
  for (std::uint64_t w : words) {
    std::uint64_t k1 = std::rotl(w * kC1, 31) * kC2;
    h1 ^= k1;
    h1 = std::rotl(h1, 27) + h2;
    h1 = h1 * 5 + 0x52dce729;
    std::uint64_t k2 = std::rotl(w * kC2, 33) * kC1;
    h2 ^= k2;
    h2 = std::rotl(h2, 31) + h1;
    h2 = h2 * 5 + 0x38495ab5;
  }
  h1 ^= words.size();
  h2 ^= words.size();
  h1 += h2;
  h2 += h1;
  h1 = fmix64(h1);
  h2 = fmix64(h2);
  h1 += h2;
  h2 += h1;
  return {h1, h2};
}

Hash128 code_digest(const BinaryCode& c) {
  std::vector<std::uint64_t> words{c.length(), c.dimension()};
  const auto rows = c.packed_rows();
  words.insert(words.end(), rows.begin(), rows.end());
  return digest128(words);
}

std::string Hash128::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

std::optional<Hash128> Hash128::from_hex(std::string_view s) {
  if (s.size() != 32) return std::nullopt;
  Hash128 h;
  for (std::size_t i = 0; i < 32; ++i) {
    const char ch = s[i];
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else return std::nullopt;
    std::uint64_t& word = i < 16 ? h.hi : h.lo;
    word = (word << 4) | std::uint64_t(v);
  }
  return h;
}

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Yes: return "yes";
    case Equivalence::No: return "no";
    case Equivalence::Unknown: return "unknown";
  }
  return "?";
}

// --------------------------------------------------------------- incidence

namespace {

// Bipartite structure between coordinates and a weight-selected set of
// codewords ("blocks"). Refinement only ever sorts by signatures built from
// it, so block order does not affect the result.
struct Incidence {
  std::size_t n = 0;
  std::vector<std::uint32_t> bclass;
  std::vector<std::uint32_t> mstart{0}, members;
  std::vector<std::uint32_t> istart, inc;

  std::size_t blocks() const { return bclass.size(); }
};

Incidence build_incidence(const BinaryCode& c, const CanonOptions& opts) {
  Incidence g;
  g.n = c.length();
  g.istart.assign(g.n + 1, 0);
  const std::size_t k = c.dimension();
  if (k > opts.max_block_info_bits) return g;

  EnumOptions eo;
  eo.threads = 1;
  eo.max_info_bits = opts.max_block_info_bits;
  const WeightEnumerator w = weight_enumerator(c, std::nullopt, eo);
  const auto d = w.min_distance();
  if (!d) return g;

  // Largest weight whose cumulative class sizes stay within the block limit.
  std::size_t wmax = 0;
  std::uint64_t total = 0;
  for (std::size_t i = *d; i <= g.n; ++i) {
    if (total + w[i] > opts.max_blocks) break;
    total += w[i];
    wmax = i;
  }
  if (wmax == 0) return g;

  const std::size_t nw = words_for(g.n);
  const auto rows = c.packed_rows();
  std::vector<std::vector<std::uint64_t>> by_weight(wmax + 1);
  std::vector<std::uint64_t> cur(nw, 0);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    const std::size_t r = std::size_t(std::countr_zero(i));
    std::size_t wt = 0;
    for (std::size_t j = 0; j < nw; ++j) {
      cur[j] ^= rows[r * nw + j];
      wt += std::size_t(std::popcount(cur[j]));
    }
    if (wt <= wmax) by_weight[wt].insert(by_weight[wt].end(), cur.begin(), cur.end());
  }

  // Classes d..d+window, then further classes while some coordinate is uncovered.
  std::vector<std::uint64_t> support(nw, 0);
  auto covered = [&] {
    std::size_t s = 0;
    for (std::uint64_t x : support) s += std::size_t(std::popcount(x));
    return s;
  };
  std::vector<std::uint32_t> deg(g.n, 0);
  for (std::size_t wt = *d; wt <= wmax; ++wt) {
    if (wt > *d + opts.weight_window && covered() == g.n) break;
    const auto& words = by_weight[wt];
    for (std::size_t off = 0; off < words.size(); off += nw) {
      for (std::size_t j = 0; j < nw; ++j) {
        support[j] |= words[off + j];
        for (std::uint64_t x = words[off + j]; x; x &= x - 1) {
          const auto pos = std::uint32_t(j * 64 + std::size_t(std::countr_zero(x)));
          g.members.push_back(pos);
          ++deg[pos];
        }
      }
      g.mstart.push_back(std::uint32_t(g.members.size()));
      g.bclass.push_back(std::uint32_t(wt));
    }
  }

  for (std::size_t x = 0; x < g.n; ++x) g.istart[x + 1] = g.istart[x] + deg[x];
  g.inc.resize(g.members.size());
  std::vector<std::uint32_t> fill(g.istart.begin(), g.istart.end() - 1);
  for (std::uint32_t b = 0; b < g.blocks(); ++b)
    for (std::uint32_t p = g.mstart[b]; p < g.mstart[b + 1]; ++p) g.inc[fill[g.members[p]]++] = b;
  return g;
}

// ------------------------------------------------------------- refinement

class Refiner {
 public:
  explicit Refiner(const Incidence& g) : g_(g) {}

  // Refines the ordered partition given by cell indices cc (cells in order),
  // returning an invariant trace of the process.
  std::uint64_t refine(std::vector<std::uint32_t>& cc, std::uint32_t& cells) {
    std::uint64_t trace = mix(0x51ed27, cells);
    const std::size_t n = g_.n, nb = g_.blocks();
    bc_.assign(nb, 0);
    for (;;) {
      if (nb > 0) {
        build(nb, [&](std::size_t b, std::vector<std::uint32_t>& out) {
          out.push_back(g_.bclass[b]);
          const std::size_t s = out.size();
          for (std::uint32_t p = g_.mstart[b]; p < g_.mstart[b + 1]; ++p) out.push_back(cc[g_.members[p]]);
          std::sort(out.begin() + std::ptrdiff_t(s), out.end());
        });
        rank(nb, bc_, nullptr);
      }
      build(n, [&](std::size_t x, std::vector<std::uint32_t>& out) {
        out.push_back(cc[x]);
        const std::size_t s = out.size();
        for (std::uint32_t p = g_.istart[x]; p < g_.istart[x + 1]; ++p) out.push_back(bc_[g_.inc[p]]);
        std::sort(out.begin() + std::ptrdiff_t(s), out.end());
      });
      next_.assign(n, 0);
      const std::uint32_t ncells = rank(n, next_, &trace);
      trace = mix(trace, ncells);
      if (ncells == cells) break;
      cc.swap(next_);
      cells = ncells;
    }
    return trace;
  }

 private:
  template <class F>
  void build(std::size_t count, F&& fill) {
    sig_.clear();
    start_.assign(1, 0);
    for (std::size_t i = 0; i < count; ++i) {
      fill(i, sig_);
      start_.push_back(sig_.size());
    }
  }

  std::span<const std::uint32_t> sig(std::size_t i) const {
    return {sig_.data() + start_[i], start_[i + 1] - start_[i]};
  }

  // Ranks items by signature; equal signatures share a rank. Mixes the sorted
  // signature sequence into *trace when given.
  std::uint32_t rank(std::size_t count, std::vector<std::uint32_t>& out, std::uint64_t* trace) {
    order_.resize(count);
    std::iota(order_.begin(), order_.end(), 0u);
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
      const auto sa = sig(a), sb = sig(b);
      return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
    });
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) {
        const auto sa = sig(order_[i - 1]), sb = sig(order_[i]);
        if (!std::equal(sa.begin(), sa.end(), sb.begin(), sb.end())) {
          ++r;
          if (trace) {
            *trace = mix(*trace, sa.size());
            for (std::uint32_t v : sa) *trace = mix(*trace, v);
          }
        }
      }
      out[order_[i]] = r;
    }
    if (trace && count > 0) {
      const auto last = sig(order_.back());
      *trace = mix(*trace, last.size());
      for (std::uint32_t v : last) *trace = mix(*trace, v);
    }
    return count == 0 ? 0 : r + 1;
  }

  const Incidence& g_;
  std::vector<std::uint32_t> bc_, next_, sig_, order_;
  std::vector<std::size_t> start_;
};

// -------------------------------------------------------------- backtrack

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Leaf {
  bool set = false;
  std::vector<std::uint64_t> traces;
  std::vector<std::uint32_t> path;
  std::vector<std::uint64_t> cert;
  std::vector<std::size_t> labeling;
};

struct Abort {};

class Backtrack {
 public:
  Backtrack(const BinaryCode& c, const Incidence& g, const CanonOptions& opts)
      : code_(c), n_(c.length()), refiner_(g), opts_(opts) {}

  CanonResult run() {
    CanonResult out;
    bool complete = true;
    try {
      std::vector<std::uint32_t> cc(n_, 0);
      std::uint32_t cells = n_ > 0 ? 1 : 0;
      traces_.push_back(refiner_.refine(cc, cells));
      visit(cc, cells, true, true);
    } catch (const Abort&) {
      complete = false;
    }
    std::vector<std::size_t> labeling(n_);
    if (best_.set) labeling = best_.labeling;
    else std::iota(labeling.begin(), labeling.end(), std::size_t{0});
    out.form.code = permute(code_, labeling);
    out.form.hash = code_digest(out.form.code);
    out.form.labeling = std::move(labeling);
    out.form.complete = complete;
    out.aut.order = complete ? order_ : boost::multiprecision::cpp_int(1);
    out.aut.complete = complete;
    for (const auto& gen : gens_) out.aut.generators.emplace_back(gen.begin(), gen.end());
    out.nodes = nodes_;
    return out;
  }

 private:
  static constexpr int kNoJump = -1;

  // Traces of the current path (index 0 is the root) against the best leaf.
  int compare_best() const {
    const std::size_t len = std::min(traces_.size(), best_.traces.size());
    for (std::size_t i = 0; i < len; ++i)
      if (traces_[i] != best_.traces[i]) return traces_[i] < best_.traces[i] ? -1 : 1;
    if (traces_.size() == best_.traces.size()) return 0;
    return traces_.size() < best_.traces.size() ? 0 : 1;
  }

  int common_prefix(const std::vector<std::uint32_t>& p) const {
    std::size_t i = 0;
    while (i < p.size() && i < path_.size() && p[i] == path_[i]) ++i;
    return int(i);
  }

  UnionFind orbits_fixing_path() const {
    UnionFind uf(n_);
    for (const auto& gen : gens_) {
      bool fixes = true;
      for (std::uint32_t v : path_)
        if (gen[v] != v) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (std::uint32_t x = 0; x < n_; ++x) uf.unite(x, gen[x]);
    }
    return uf;
  }

  void add_generator(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    std::vector<std::uint32_t> inv(n_), gen(n_);
    for (std::size_t x = 0; x < n_; ++x) inv[to[x]] = std::uint32_t(x);
    for (std::size_t x = 0; x < n_; ++x) gen[x] = inv[from[x]];
    gens_.push_back(std::move(gen));
  }

  int leaf(const std::vector<std::uint32_t>& cc, bool eq_first) {
    std::vector<std::size_t> labeling(cc.begin(), cc.end());
    std::vector<std::uint64_t> cert = permute(code_, labeling).packed_rows();
    if (!first_.set) {
      first_ = {true, traces_, path_, std::move(cert), std::move(labeling)};
      best_ = first_;
      return kNoJump;
    }
    if (eq_first && cert == first_.cert) {
      add_generator(first_.labeling, labeling);
      return common_prefix(first_.path);
    }
    const int cmp = compare_best();
    if (cmp < 0 || (cmp == 0 && cert < best_.cert)) {
      best_ = {true, traces_, path_, std::move(cert), std::move(labeling)};
      return kNoJump;
    }
    if (cmp == 0 && cert == best_.cert) {
      add_generator(best_.labeling, labeling);
      return std::max(common_prefix(best_.path), common_prefix(first_.path));
    }
    return kNoJump;
  }

  int visit(const std::vector<std::uint32_t>& cc, std::uint32_t cells, bool eq_first, bool on_first) {
    if (cells == n_) return leaf(cc, eq_first);
    const std::size_t level = path_.size();

    // Target: the first smallest non-singleton cell.
    std::vector<std::uint32_t> size(cells, 0);
    for (std::uint32_t c : cc) ++size[c];
    std::uint32_t target = 0, best_size = UINT32_MAX;
    for (std::uint32_t c = 0; c < cells; ++c)
      if (size[c] > 1 && size[c] < best_size) {
        best_size = size[c];
        target = c;
      }

    std::vector<std::uint32_t> explored;
    UnionFind uf;
    std::size_t uf_gens = SIZE_MAX;
    std::vector<std::uint32_t> child(n_);
    for (std::uint32_t w = 0; w < n_; ++w) {
      if (cc[w] != target) continue;
      if (!explored.empty()) {
        if (uf_gens != gens_.size()) {
          uf = orbits_fixing_path();
          uf_gens = gens_.size();
        }
        const std::uint32_t root = uf.find(w);
        if (std::any_of(explored.begin(), explored.end(), [&](std::uint32_t e) { return uf.find(e) == root; }))
          continue;
      }
      explored.push_back(w);
      if (++nodes_ > opts_.node_budget) throw Abort{};

      for (std::uint32_t x = 0; x < n_; ++x)
        child[x] = cc[x] < target ? cc[x] : (cc[x] == target ? (x == w ? target : target + 1) : cc[x] + 1);
      std::uint32_t ccells = cells + 1;
      const std::uint64_t t = refiner_.refine(child, ccells);

      const bool child_on_first = on_first && (!first_.set || first_.path[level] == w);
      const bool child_eq_first =
          !first_.set || (eq_first && level + 1 < first_.traces.size() && first_.traces[level + 1] == t);
      traces_.push_back(t);
      if (!child_eq_first && best_.set && compare_best() > 0) {
        traces_.pop_back();
        continue;
      }
      path_.push_back(w);
      const int r = visit(child, ccells, child_eq_first, child_on_first);
      path_.pop_back();
      traces_.pop_back();
      if (r != kNoJump && r < int(level)) return r;
    }

    if (on_first) {
      UnionFind fix = orbits_fixing_path();
      const std::uint32_t root = fix.find(first_.path[level]);
      std::uint32_t orbit = 0;
      for (std::uint32_t x = 0; x < n_; ++x)
        if (fix.find(x) == root) ++orbit;
      order_ *= orbit;
    }
    return kNoJump;
  }

  const BinaryCode& code_;
  const std::uint32_t n_;
  Refiner refiner_;
  const CanonOptions& opts_;
  std::vector<std::uint32_t> path_;
  std::vector<std::uint64_t> traces_;
  Leaf first_, best_;
  std::vector<std::vector<std::uint32_t>> gens_;
  boost::multiprecision::cpp_int order_ = 1;
  std::uint64_t nodes_ = 0;
};

}  // namespace

CanonResult canonical_search(const BinaryCode& c, const CanonOptions& opts) {
  if (c.dimension() == 0) throw PreconditionError("canonicalize: the zero code has no canonical form (k = 0)");
  const Incidence g = build_incidence(c, opts);
  return Backtrack(c, g, opts).run();
}

CanonicalForm canonicalize(const BinaryCode& c, const CanonOptions& opts) { return canonical_search(c, opts).form; }

AutInfo aut_order(const BinaryCode& c, const CanonOptions& opts) { return canonical_search(c, opts).aut; }

Equivalence are_equivalent(const BinaryCode& a, const BinaryCode& b, const CanonOptions& opts) {
  if (a.length() != b.length())
    throw PreconditionError("are_equivalent: lengths " + std::to_string(a.length()) + " and " +
                            std::to_string(b.length()) + " differ");
  if (a.dimension() != b.dimension()) return Equivalence::No;
  if (a.dimension() == 0) return Equivalence::Yes;
  try {
    EnumOptions eo;
    eo.threads = 1;
    if (weight_enumerator(a, std::nullopt, eo) != weight_enumerator(b, std::nullopt, eo)) return Equivalence::No;
  } catch (const BudgetExceeded&) {
    // Too large to enumerate; rely on the canonical search alone.
  }
  const CanonResult ra = canonical_search(a, opts), rb = canonical_search(b, opts);
  if (ra.aut.complete && rb.aut.complete && ra.aut.order != rb.aut.order) return Equivalence::No;
  if (!ra.form.complete || !rb.form.complete) return Equivalence::Unknown;
  return ra.form.code == rb.form.code ? Equivalence::Yes : Equivalence::No;
}

}  // namespace qcforge
