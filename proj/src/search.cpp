#include "qcforge/search.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "qcforge/error.hpp"
#include "qcforge/parallel.hpp"
#include "qcforge/qc.hpp"

namespace qcforge {

// ------------------------------------------------------------ databases

std::size_t ComponentDb::length() const {
  if (!binary.empty()) return binary.front().code.length();
  if (!quaternary.empty()) return quaternary.front().code.length();
  return 0;
}

namespace {

template <class Code>
void check_entry(const DbEntry<Code>& e, std::size_t length, std::set<std::string>& names, const char* field) {
  if (!names.insert(e.name).second)
    throw ValidationError(std::string("duplicate ") + field + " code name '" + e.name + "' (" + e.source + ")");
  if (e.code.length() != length)
    throw ValidationError("code '" + e.name + "' has length " + std::to_string(e.code.length()) + ", expected " +
                          std::to_string(length) + " (" + e.source + ")");
  if (!is_self_dual(e.code))
    throw ValidationError("code '" + e.name + "' is not self-dual (" + e.source + ")");
  if (e.claimed_d) {
    const std::size_t d = min_distance(e.code).weight;
    if (d != *e.claimed_d)
      throw ValidationError("code '" + e.name + "' claims d=" + std::to_string(*e.claimed_d) + " but has d=" +
                            std::to_string(d) + " (" + e.source + ")");
  }
}

}  // namespace

ComponentDb make_component_db(const std::vector<NamedCode>& codes, const std::string& source) {
  ComponentDb db;
  db.source = source;
  for (const NamedCode& nc : codes) {
    const std::string where = source + ":" + std::to_string(nc.line);
    if (nc.is_binary()) db.binary.push_back({nc.name, nc.binary(), nc.claimed_d, where});
    else db.quaternary.push_back({nc.name, nc.quaternary(), nc.claimed_d, where});
  }
  const std::size_t n = db.length();
  std::set<std::string> bnames, qnames;
  for (const auto& e : db.binary) check_entry(e, n, bnames, "binary");
  for (const auto& e : db.quaternary) check_entry(e, n, qnames, "quaternary");
  return db;
}

ComponentDb load_component_db(const std::filesystem::path& path) {
  return make_component_db(read_code_file(path), path.string());
}

// ---------------------------------------------------------- enumeration
//
// Codes are grown one RREF row at a time, each new row having its leading 1
// left of every existing pivot and zeros at the existing pivots. A code is
// then reached only from the code spanned by its RREF rows 2..k, so every
// self-orthogonal code appears exactly once and no visited set is needed.

namespace {

template <class Vec>
Vec project(const Vec& v, const std::vector<std::size_t>& cols) {
  Vec out(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) out.set(i, v.get(cols[i]));
  return out;
}

template <class Vec>
Vec lift(const Vec& u, const std::vector<std::size_t>& cols, std::size_t n) {
  Vec out(n);
  for (std::size_t i = 0; i < cols.size(); ++i) out.set(cols[i], u.get(i));
  return out;
}

template <class Code, class Vec>
class SelfDualEnumerator {
 public:
  SelfDualEnumerator(std::size_t n, const EnumerateLimits& limits) : n_(n), limits_(limits) {
    if (n % 2 != 0) throw PreconditionError("enumerate_selfdual: length must be even, got " + std::to_string(n));
  }

  std::vector<Code> run() {
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;
    extend(rows, pivots);
    return std::move(out_);
  }

 private:
  static constexpr bool kBinary = std::is_same_v<Vec, BitVec>;

  void extend(std::vector<Vec>& rows, std::vector<std::size_t>& pivots) {
    const std::size_t k = rows.size();
    if (2 * k == n_) {
      if (out_.size() >= limits_.max_codes)
        throw BudgetExceeded("enumerate_selfdual: more than " + std::to_string(limits_.max_codes) + " codes");
      std::vector<Vec> ordered(rows.rbegin(), rows.rend());
      out_.push_back(Code::from_rows(n_, ordered));
      return;
    }
    const std::size_t need = n_ / 2 - k;
    const std::size_t first = k ? pivots.back() : n_;
    for (std::size_t p0 = need - 1; p0 < first; ++p0) {
      std::vector<std::size_t> cols{p0};
      for (std::size_t j = p0 + 1; j < n_; ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) cols.push_back(j);
      std::vector<Vec> constraints;
      for (const Vec& r : rows) constraints.push_back(project(r, cols));
      const Code perp = orthogonal(Code::from_rows(cols.size(), constraints));
      if (perp.dimension() == 0 || perp.pivots().front() != 0) continue;

      const Vec& base = perp.rows().front();
      const std::size_t free = perp.dimension() - 1;
      const std::size_t symbols = kBinary ? 2 : 4;
      std::vector<std::size_t> digit(free, 0);
      for (;;) {
        Vec u = base;
        for (std::size_t i = 0; i < free; ++i) {
          if (digit[i] == 0) continue;
          if constexpr (kBinary) u ^= perp.rows()[i + 1];
          else u += perp.rows()[i + 1].scaled(Gf4(std::uint8_t(digit[i])));
        }
        if (u.weight() % 2 == 0) {
          rows.push_back(lift(u, cols, n_));
          pivots.push_back(p0);
          extend(rows, pivots);
          rows.pop_back();
          pivots.pop_back();
        }
        std::size_t i = 0;
        while (i < free && ++digit[i] == symbols) digit[i++] = 0;
        if (i == free) break;
      }
    }
  }

  static Code orthogonal(const Code& c) {
    if constexpr (kBinary) return euclidean_dual(c);
    else return hermitian_dual(c);
  }

  std::size_t n_;
  EnumerateLimits limits_;
  std::vector<Code> out_;
};

}  // namespace

std::vector<BinaryCode> enumerate_selfdual_gf2(std::size_t n, const EnumerateLimits& limits) {
  return SelfDualEnumerator<BinaryCode, BitVec>(n, limits).run();
}

std::vector<QuaternaryCode> enumerate_selfdual_gf4(std::size_t n, const EnumerateLimits& limits) {
  return SelfDualEnumerator<QuaternaryCode, Gf4Vec>(n, limits).run();
}

namespace {

template <class Code, class Vec>
Code random_selfdual(std::size_t n, std::uint64_t seed) {
  constexpr bool kBinary = std::is_same_v<Vec, BitVec>;
  if (n % 2 != 0) throw PreconditionError("random self-dual code: length must be even");
  std::mt19937_64 rng(seed);
  std::vector<Vec> rows;
  Code c = Code::zero(n);
  while (2 * c.dimension() < n) {
    Code perp;
    if constexpr (kBinary) perp = euclidean_dual(c);
    else perp = hermitian_dual(c);
    for (;;) {
      Vec v(n);
      for (const Vec& r : perp.rows()) {
        if constexpr (kBinary) {
          if (rng() & 1u) v ^= r;
        } else {
          v += r.scaled(Gf4(std::uint8_t(rng() & 3u)));
        }
      }
      if (v.weight() % 2 != 0 || c.contains(v)) continue;
      rows.push_back(v);
      c = Code::from_rows(n, rows);
      break;
    }
  }
  return c;
}

}  // namespace

BinaryCode random_selfdual_gf2(std::size_t n, std::uint64_t seed) {
  return random_selfdual<BinaryCode, BitVec>(n, seed);
}

QuaternaryCode random_selfdual_gf4(std::size_t n, std::uint64_t seed) {
  return random_selfdual<QuaternaryCode, Gf4Vec>(n, seed);
}

// ------------------------------------------------------- classification

Census classify_cubic(std::size_t ell, const ClassifyOptions& opts) {
  if (ell == 0 || ell % 2 != 0) throw PreconditionError("classify_cubic: ell must be a positive even number");
  const unsigned threads = resolve_threads(opts.threads);
  const std::vector<BinaryCode> c1s = enumerate_selfdual_gf2(ell, opts.limits);
  const std::vector<QuaternaryCode> c2s = enumerate_selfdual_gf4(ell, opts.limits);

  Census census;
  census.ell = ell;
  census.binary_codes = c1s.size();
  census.quaternary_codes = c2s.size();

  std::vector<std::size_t> reps;
  {
    std::vector<CanonicalForm> forms(c1s.size());
    parallel_for(c1s.size(), threads, [&](std::size_t i) { forms[i] = canonicalize(c1s[i], opts.canon); });
    std::set<Hash128> seen;
    for (std::size_t i = 0; i < c1s.size(); ++i)
      if (!forms[i].complete || seen.insert(forms[i].hash).second) reps.push_back(i);
  }
  census.binary_reps = reps.size();
  census.pairs = std::uint64_t(reps.size()) * c2s.size();

  std::vector<CanonResult> results(reps.size() * c2s.size());
  parallel_for(results.size(), threads, [&](std::size_t idx) {
    const BinaryCode code = construct_cubic({c1s[reps[idx / c2s.size()]], c2s[idx % c2s.size()]});
    results[idx] = canonical_search(code, opts.canon);
    results[idx].form.labeling.clear();
    results[idx].aut.generators.clear();
  });

  std::map<Hash128, std::size_t> index;
  for (std::size_t idx = 0; idx < results.size(); ++idx) {
    CanonResult& r = results[idx];
    if (!r.form.complete) census.complete = false;
    auto [it, fresh] = index.emplace(r.form.hash, census.classes.size());
    if (fresh) {
      CensusClass cls;
      cls.code = std::move(r.form.code);
      cls.hash = r.form.hash;
      cls.aut_order = r.aut.order;
      cls.c1_index = reps[idx / c2s.size()];
      cls.c2_index = idx % c2s.size();
      census.classes.push_back(std::move(cls));
    }
    ++census.classes[it->second].members;
  }
  EnumOptions eo;
  eo.threads = 1;
  parallel_for(census.classes.size(), threads, [&](std::size_t i) {
    CensusClass& cls = census.classes[i];
    cls.wenum = weight_enumerator(cls.code, std::nullopt, eo);
    cls.d = cls.wenum.min_distance().value_or(0);
  });
  return census;
}

// --------------------------------------------------------------- search

Transform Transform::identity(std::size_t ell) {
  Transform t;
  t.perm.resize(ell);
  for (std::size_t i = 0; i < ell; ++i) t.perm[i] = i;
  t.scaling.assign(ell, Gf4::one());
  return t;
}

std::string Transform::scaling_string() const {
  std::string s;
  for (Gf4 g : scaling) s.push_back(g.to_char());
  return s;
}

void validate_transform(const Transform& t, std::size_t ell) {
  if (t.perm.size() != ell || t.scaling.size() != ell)
    throw PreconditionError("transform length differs from the component length " + std::to_string(ell));
  std::vector<bool> hit(ell, false);
  for (std::size_t p : t.perm) {
    if (p >= ell || hit[p]) throw PreconditionError("transform permutation is not a permutation of 0.." +
                                                    std::to_string(ell - 1));
    hit[p] = true;
  }
  for (Gf4 g : t.scaling)
    if (g.is_zero()) throw PreconditionError("transform scaling contains zero");
}

QuaternaryCode apply_transform(const QuaternaryCode& c, const Transform& t) {
  validate_transform(t, c.length());
  std::vector<Gf4Vec> rows;
  for (const Gf4Vec& r : c.rows()) {
    Gf4Vec v = t.conjugate ? r.conj() : r;
    for (std::size_t i = 0; i < v.size(); ++i) v.set(i, v.get(i) * t.scaling[i]);
    rows.push_back(permute(v, t.perm));
  }
  return QuaternaryCode::from_rows(c.length(), rows);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t item_seed(std::uint64_t run_seed, std::size_t c1, std::size_t c2, std::uint64_t sample) {
  std::uint64_t s = run_seed;
  std::uint64_t h = splitmix64(s);
  for (std::uint64_t v : {std::uint64_t(c1), std::uint64_t(c2), sample}) {
    s = h ^ v;
    h = splitmix64(s);
  }
  return h;
}

// Uniform in [0, bound) by rejection; std distributions are not portable.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

}  // namespace

Transform sample_transform(std::size_t ell, std::uint64_t run_seed, std::size_t c1_index, std::size_t c2_index,
                           std::uint64_t sample, bool scalings, bool conjugation) {
  Transform t = Transform::identity(ell);
  if (sample == 0) return t;
  std::mt19937_64 rng(item_seed(run_seed, c1_index, c2_index, sample));
  for (std::size_t i = ell; i > 1; --i) std::swap(t.perm[i - 1], t.perm[below(rng, i)]);
  if (scalings)
    for (Gf4& g : t.scaling) g = Gf4(std::uint8_t(1 + below(rng, 3)));
  if (conjugation) t.conjugate = rng() & 1u;
  return t;
}

namespace {

struct ItemResult {
  bool survived = false;
  CodeRecord rec;
  bool divisible = true;
};

std::string invariant_key(const CodeRecord& r, const WeightEnumerator& w) {
  std::ostringstream key;
  key << "d=" << r.d << ";A=";
  bool first = true;
  auto put = [&](std::size_t i) {
    key << (first ? "" : ",") << i << ':' << w[i];
    first = false;
  };
  if (!r.template_coeffs.empty())
    for (const auto& [i, a] : r.template_coeffs) put(i);
  else
    for (std::size_t i = r.d; i <= std::min(r.n, r.d + 4); ++i) put(i);
  return key.str();
}

ItemResult process(const ComponentDb& db, const SearchConfig& cfg, const std::vector<WenumTemplate>& templates,
                   std::size_t i, std::size_t j, std::uint64_t sample) {
  ItemResult out;
  const auto& c1 = db.binary[i];
  const auto& c2 = db.quaternary[j];
  const Transform t = sample_transform(cfg.ell, cfg.seed, i, j, sample, cfg.scalings, cfg.conjugation);
  const BinaryCode code = construct_cubic({c1.code, apply_transform(c2.code, t)});

  EnumOptions eo;
  eo.threads = 1;
  eo.order_seed = item_seed(cfg.seed, i, j, sample);
  const std::optional<std::size_t> stop =
      cfg.d_target >= 2 ? std::optional<std::size_t>(cfg.d_target - 1) : std::nullopt;
  const DistanceResult md = min_distance(code, stop, eo);
  if (md.weight < cfg.d_target) return out;
  out.survived = true;

  eo.order_seed.reset();
  const WeightEnumerator w = weight_enumerator(code, std::nullopt, eo);
  CodeRecord& r = out.rec;
  r.n = code.length();
  r.k = code.dimension();
  r.d = w.min_distance().value_or(0);
  r.wenum = w.to_string();
  for (const WenumTemplate& tpl : templates)
    for (const TemplateTerm& term : tpl.terms) r.template_coeffs[term.weight] = w[term.weight];
  if (!templates.empty()) {
    const TemplateMatch m = extract_parameter(w, templates);
    if (m.status == TemplateMatch::Status::Match) {
      r.template_label = m.label;
      r.param_name = m.param_name;
      r.param = m.param;
      r.param_in_range = m.in_range;
    } else if (m.status == TemplateMatch::Status::Ambiguous) {
      r.template_label = "ambiguous";
    }
  }
  r.type = to_string(classify_type(w, is_self_dual(code)));
  out.divisible = check_divisibility(w, 3).empty();

  const CanonResult canon = canonical_search(code, cfg.canon);
  r.hash = canon.form.hash.hex();
  r.code_digest = code_digest(code).hex();
  r.canon_complete = canon.form.complete;
  r.aut_order = canon.aut.order.str();
  r.aut_complete = canon.aut.complete;
  if (!canon.form.complete) r.group = invariant_key(r, w);

  r.c1 = c1.name;
  r.c2 = c2.name;
  r.c1_index = i;
  r.c2_index = j;
  r.sample = sample;
  r.perm = t.perm;
  r.scaling = t.scaling_string();
  r.conjugate = t.conjugate;
  r.seed = item_seed(cfg.seed, i, j, sample);
  return out;
}

}  // namespace

Catalog run_search(const ComponentDb& db, const SearchConfig& cfg) {
  if (cfg.ell == 0 || cfg.ell % 2 != 0) throw PreconditionError("search: ell must be a positive even number");
  if (db.length() != cfg.ell)
    throw PreconditionError("search: database length " + std::to_string(db.length()) + " differs from ell " +
                            std::to_string(cfg.ell));
  if (cfg.samples == 0) throw PreconditionError("search: samples must be at least 1");
  const unsigned threads = resolve_threads(cfg.threads);
  const std::vector<WenumTemplate> templates = cfg.templates.value_or(templates_for_length(3 * cfg.ell));

  Catalog cat;
  cat.meta = {cfg.ell, 3 * cfg.ell, cfg.d_target, cfg.samples, cfg.seed, cfg.scalings, cfg.conjugation, db.source,
              cfg.command};

  std::vector<std::size_t> d1(db.binary.size()), d2(db.quaternary.size());
  parallel_for(d1.size(), threads, [&](std::size_t i) { d1[i] = min_distance(db.binary[i].code).weight; });
  parallel_for(d2.size(), threads, [&](std::size_t j) { d2[j] = min_distance(db.quaternary[j].code).weight; });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d1.size(); ++i)
    for (std::size_t j = 0; j < d2.size(); ++j) {
      if (distance_bound(d1[i], d2[j]) >= cfg.d_target) pairs.emplace_back(i, j);
      else ++cat.stats.pairs_skipped;
    }
  cat.stats.pairs = pairs.size();

  std::set<std::string> complete_hashes, incomplete_hashes;
  std::map<std::string, std::size_t> group_sizes;
  const std::uint64_t total = std::uint64_t(pairs.size()) * cfg.samples;
  const std::uint64_t batch = std::max<std::uint64_t>(256, 64 * std::uint64_t(threads));
  for (std::uint64_t start = 0; start < total; start += batch) {
    const std::uint64_t count = std::min(batch, total - start);
    std::vector<ItemResult> results(count);
    parallel_for(count, threads, [&](std::size_t off) {
      const std::uint64_t item = start + off;
      const auto [i, j] = pairs[item / cfg.samples];
      results[off] = process(db, cfg, templates, i, j, item % cfg.samples);
    });
    for (ItemResult& res : results) {
      ++cat.stats.items;
      if (!res.survived) {
        ++cat.stats.rejected_distance;
        continue;
      }
      ++cat.stats.survivors;
      if (!res.divisible) ++cat.stats.divisibility_failures;
      CodeRecord& r = res.rec;
      if (r.canon_complete) {
        if (!complete_hashes.insert(r.hash).second) {
          ++cat.stats.duplicates;
          continue;
        }
      } else {
        ++cat.stats.canon_incomplete;
        if (!incomplete_hashes.insert(r.hash).second) {
          ++cat.stats.duplicates;
          continue;
        }
        if (group_sizes[r.group]++ >= cfg.max_group_records) {
          ++cat.stats.group_overflow;
          continue;
        }
      }
      cat.records.push_back(std::move(r));
    }
  }
  return cat;
}

BinaryCode replay(const CodeRecord& rec, const ComponentDb& db) {
  auto b = std::find_if(db.binary.begin(), db.binary.end(), [&](const auto& e) { return e.name == rec.c1; });
  auto q = std::find_if(db.quaternary.begin(), db.quaternary.end(), [&](const auto& e) { return e.name == rec.c2; });
  if (b == db.binary.end()) throw PreconditionError("replay: binary component '" + rec.c1 + "' not in database");
  if (q == db.quaternary.end())
    throw PreconditionError("replay: quaternary component '" + rec.c2 + "' not in database");
  Transform t;
  t.perm = rec.perm;
  for (char ch : rec.scaling) t.scaling.push_back(Gf4::from_char(ch));
  t.conjugate = rec.conjugate;
  return construct_cubic({b->code, apply_transform(q->code, t)});
}

}  // namespace qcforge
