#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcforge/catalog.hpp"
#include "qcforge/error.hpp"
#include "qcforge/qc.hpp"
#include "qcforge/search.hpp"
#include "support.hpp"

using namespace qcforge;
using namespace qctest;

namespace {

NamedCode named_bin(const std::string& name, std::size_t n, std::initializer_list<const char*> rows) {
  std::vector<BitVec> v;
  for (const char* r : rows) v.push_back(BitVec::from_string(r));
  return {name, BinaryCode::from_rows(n, v)};
}

NamedCode named_quat(const std::string& name, std::size_t n, std::initializer_list<const char*> rows) {
  std::vector<Gf4Vec> v;
  for (const char* r : rows) v.push_back(Gf4Vec::from_string(r));
  return {name, QuaternaryCode::from_rows(n, v)};
}

std::string validation_message(const std::vector<NamedCode>& codes) {
  try {
    make_component_db(codes, "test");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

std::uint64_t binary_mass(std::size_t n) {
  std::uint64_t m = 1;
  for (std::size_t i = 1; i < n / 2; ++i) m *= (std::uint64_t{1} << i) + 1;
  return m;
}

std::uint64_t hermitian_mass(std::size_t n) {
  std::uint64_t m = 1;
  for (std::size_t i = 0; i < n / 2; ++i) m *= (std::uint64_t{1} << (2 * i + 1)) + 1;
  return m;
}

// Self-dual binary codes of length n <= 6 counted as distinct codeword sets,
// found by testing every set of n/2 nonzero vectors.
std::size_t brute_selfdual_gf2(std::size_t n) {
  const std::size_t k = n / 2;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::set<std::set<std::uint64_t>> codes;
  std::vector<std::uint64_t> pick(k);
  auto rec = [&](auto&& self, std::size_t depth, std::uint64_t from) -> void {
    if (depth == k) {
      std::set<std::uint64_t> words;
      for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << k); ++msg) {
        std::uint64_t w = 0;
        for (std::size_t r = 0; r < k; ++r)
          if ((msg >> r) & 1u) w ^= pick[r];
        words.insert(w);
      }
      if (words.size() != (std::size_t{1} << k)) return;
      for (std::uint64_t a : words)
        for (std::uint64_t b : words)
          if (std::popcount(a & b) % 2) return;
      codes.insert(words);
      return;
    }
    for (std::uint64_t v = from; v < total; ++v) {
      pick[depth] = v;
      self(self, depth + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  return codes.size();
}

// Hermitian self-orthogonal one-dimensional subspaces of GF(4)^2.
std::size_t brute_selfdual_gf4_n2() {
  std::set<std::set<std::pair<int, int>>> lines;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == 0 && b == 0) continue;
      const Gf4 x{std::uint8_t(a)}, y{std::uint8_t(b)};
      std::set<std::pair<int, int>> line;
      for (int s = 1; s < 4; ++s) {
        const Gf4 l{std::uint8_t(s)};
        line.insert({(l * x).bits(), (l * y).bits()});
      }
      lines.insert(line);
    }
  CHECK(lines.size() == 5);  // the projective line over GF(4)
  std::size_t sd = 0;
  for (const auto& line : lines) {
    const auto [a, b] = *line.begin();
    const Gf4 x{std::uint8_t(a)}, y{std::uint8_t(b)};
    sd += (x * x.conj() + y * y.conj()).is_zero();
  }
  return sd;
}

SearchConfig small_config(std::size_t ell, std::size_t d) {
  SearchConfig cfg;
  cfg.ell = ell;
  cfg.d_target = d;
  cfg.samples = 1;
  cfg.seed = 1;
  cfg.threads = 1;
  return cfg;
}

std::string serialize(const Catalog& cat) {
  std::ostringstream out;
  write_catalog(out, cat);
  return out.str();
}

// The [4,2] binary and 27 quaternary self-dual codes of length 4 as a database.
ComponentDb length4_db() {
  std::vector<NamedCode> codes;
  const auto b = enumerate_selfdual_gf2(4);
  const auto q = enumerate_selfdual_gf4(4);
  for (std::size_t i = 0; i < b.size(); ++i) codes.push_back({"b" + std::to_string(i), b[i]});
  for (std::size_t i = 0; i < q.size(); ++i) codes.push_back({"q" + std::to_string(i), q[i]});
  return make_component_db(codes, "length4");
}

}  // namespace

TEST_CASE("enumerate_selfdual: brute-force oracles") {
  CHECK(brute_selfdual_gf2(2) == 1);
  CHECK(brute_selfdual_gf2(4) == 3);
  CHECK(brute_selfdual_gf2(6) == 15);
  for (std::size_t n : {2u, 4u, 6u}) CHECK(enumerate_selfdual_gf2(n).size() == brute_selfdual_gf2(n));

  CHECK(brute_selfdual_gf4_n2() == 3);
  CHECK(enumerate_selfdual_gf4(2).size() == 3);
  std::size_t rref_total = 0;
  CHECK(brute_selfdual_gf4_n6(&rref_total) == 891);
  CHECK(rref_total == 376805);  // Gaussian binomial [6 choose 3] at q = 4
  CHECK(enumerate_selfdual_gf4(6).size() == 891);
}

TEST_CASE("enumerate_selfdual: mass formulas, validity, distinctness") {
  for (std::size_t n = 2; n <= 10; n += 2) {
    const auto all = enumerate_selfdual_gf2(n);
    CHECK(all.size() == binary_mass(n));
    std::set<std::vector<std::uint64_t>> seen;
    for (const BinaryCode& c : all) {
      CHECK(is_self_dual(c));
      seen.insert(c.packed_rows());
    }
    CHECK(seen.size() == all.size());
  }
  for (std::size_t n = 2; n <= 6; n += 2) {
    const auto all = enumerate_selfdual_gf4(n);
    CHECK(all.size() == hermitian_mass(n));
    std::set<std::vector<std::uint64_t>> seen;
    for (const QuaternaryCode& c : all) {
      CHECK(is_self_dual(c));
      seen.insert(c.packed_binary_generators());
    }
    CHECK(seen.size() == all.size());
  }
  CHECK_THROWS_AS(enumerate_selfdual_gf2(5), PreconditionError);
  CHECK_THROWS_AS(enumerate_selfdual_gf4(3), PreconditionError);
  CHECK_THROWS_AS(enumerate_selfdual_gf2(10, {.max_codes = 100}), BudgetExceeded);
}

TEST_CASE("random self-dual codes are self-dual and seeded") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    CHECK(is_self_dual(random_selfdual_gf2(18, s)));
    CHECK(is_self_dual(random_selfdual_gf4(18, s)));
  }
  CHECK(random_selfdual_gf2(18, 5) == random_selfdual_gf2(18, 5));
  CHECK(random_selfdual_gf4(18, 5) == random_selfdual_gf4(18, 5));
  CHECK(random_selfdual_gf2(18, 5) != random_selfdual_gf2(18, 6));
}

TEST_CASE("classify_cubic: small lengths") {
  const Census c2 = classify_cubic(2);
  CHECK(c2.complete);
  REQUIRE(c2.classes.size() == 1);
  CHECK(c2.classes[0].aut_order == 48);
  CHECK(c2.quaternary_codes == 3);
  const Census c4 = classify_cubic(4);
  CHECK(c4.complete);
  CHECK(c4.classes.size() == 2);
  for (const CensusClass& k : c4.classes) {
    CHECK(is_self_dual(k.code));
    CHECK(check_divisibility(k.wenum, 3).empty());
  }
  CHECK_THROWS_AS(classify_cubic(3), PreconditionError);
}

TEST_CASE("component databases: loading and validation") {
  const ComponentDb db = make_component_db({named_bin("i2", 2, {"11"})}, "x");
  CHECK(db.binary.size() == 1);
  CHECK(db.length() == 2);

  std::string msg = validation_message({named_bin("bad", 2, {"10"})});
  CHECK(msg.find("'bad'") != std::string::npos);
  CHECK(msg.find("not self-dual") != std::string::npos);

  const ComponentDb q = make_component_db({named_quat("h", 2, {"1w"})}, "x");
  CHECK(q.quaternary.size() == 1);

  NamedCode claimed = named_bin("i2", 2, {"11"});
  claimed.claimed_d = 4;
  CHECK(validation_message({claimed}).find("claims d=4") != std::string::npos);
  CHECK(validation_message({named_bin("a", 2, {"11"}), named_bin("a", 2, {"11"})}).find("duplicate") !=
        std::string::npos);
  CHECK(validation_message({named_bin("a", 2, {"11"}), named_bin("b", 4, {"1100", "0011"})}).find("length") !=
        std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "qcforge_test_search";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.txt", broken = dir / "broken.txt";
  std::ofstream(good) << "code i2 q=2 n=2 k=1 d=2\n11\n\ncode h q=4 n=2 k=1\n1w\n";
  std::ofstream(broken) << "code i2 q=2 n=2 k=1\n11\n\ncode h q=4 n=2 k=1\n1v\n";
  const ComponentDb loaded = load_component_db(good);
  CHECK(loaded.binary.size() == 1);
  CHECK(loaded.quaternary.size() == 1);
  CHECK(loaded.binary[0].source.find(":1") != std::string::npos);
  try {
    load_component_db(broken);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("transforms: sampling, validation, application") {
  const Transform id = sample_transform(6, 42, 0, 0, 0, true, true);
  CHECK(id.perm == Transform::identity(6).perm);
  CHECK(id.scaling_string() == "111111");
  CHECK_FALSE(id.conjugate);

  const Transform a = sample_transform(6, 42, 1, 2, 7, true, true);
  const Transform b = sample_transform(6, 42, 1, 2, 7, true, true);
  CHECK(a.perm == b.perm);
  CHECK(a.scaling == b.scaling);
  CHECK(a.conjugate == b.conjugate);
  validate_transform(a, 6);
  const Transform plain = sample_transform(6, 42, 1, 2, 7, false, false);
  CHECK(plain.scaling_string() == "111111");
  CHECK_FALSE(plain.conjugate);

  Transform bad = Transform::identity(3);
  bad.perm = {0, 0, 1};
  CHECK_THROWS_AS(validate_transform(bad, 3), PreconditionError);
  bad = Transform::identity(3);
  bad.scaling[1] = Gf4::zero();
  CHECK_THROWS_AS(validate_transform(bad, 3), PreconditionError);
  CHECK_THROWS_AS(validate_transform(Transform::identity(3), 4), PreconditionError);

  // Monomial transforms keep Hermitian self-duality and the weight enumerator.
  for (const QuaternaryCode& c : enumerate_selfdual_gf4(4)) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Transform t = sample_transform(4, 9, 0, 0, s, true, true);
      const QuaternaryCode tc = apply_transform(c, t);
      CHECK(is_self_dual(tc));
      CHECK(weight_enumerator(tc) == weight_enumerator(c));
    }
  }
  // Distinct samples do differ.
  std::set<std::vector<std::size_t>> perms;
  for (std::uint64_t s = 0; s < 50; ++s) perms.insert(sample_transform(8, 3, 0, 0, s, false, false).perm);
  CHECK(perms.size() > 40);
}

TEST_CASE("run_search: single code at length 6") {
  const ComponentDb db = make_component_db({named_bin("i2", 2, {"11"}), named_quat("h", 2, {"11"})}, "tiny");
  const Catalog cat = run_search(db, small_config(2, 2));
  REQUIRE(cat.records.size() == 1);
  const CodeRecord& r = cat.records[0];
  CHECK(r.n == 6);
  CHECK(r.k == 3);
  CHECK(r.d == 2);
  CHECK(r.wenum == "0:1 2:3 4:3 6:1");
  CHECK(r.canon_complete);
  CHECK(r.aut_order == "48");
  CHECK(r.type == "TypeI");
  CHECK(replay(r, db) == construct_cubic({db.binary[0].code, db.quaternary[0].code}));

  // d_target above every distance bound: nothing can survive.
  const Catalog none = run_search(db, small_config(2, distance_bound(2, 2) + 1));
  CHECK(none.records.empty());
  CHECK(none.stats.pairs == 0);
  CHECK(none.stats.pairs_skipped == 1);

  CHECK_THROWS_AS(run_search(db, small_config(4, 2)), PreconditionError);
  CHECK_THROWS_AS(run_search(db, small_config(3, 2)), PreconditionError);
}

TEST_CASE("run_search: determinism, replay, invariants, persistence") {
  const ComponentDb db = length4_db();
  SearchConfig cfg = small_config(4, 4);
  cfg.samples = 6;
  cfg.seed = 77;
  cfg.scalings = true;
  cfg.conjugation = true;
  const Catalog a = run_search(db, cfg);
  cfg.threads = 4;
  const Catalog b = run_search(db, cfg);
  CHECK(serialize(a) == serialize(b));
  CHECK(a.stats.items == a.stats.pairs * 6);
  CHECK(a.stats.divisibility_failures == 0);
  REQUIRE_FALSE(a.records.empty());
  std::set<std::string> hashes;
  for (const CodeRecord& r : a.records) {
    const BinaryCode c = replay(r, db);
    CHECK(code_digest(c).hex() == r.code_digest);
    CHECK(is_self_dual(c));
    CHECK(check_quasi_cyclic(c, {4, 3}));
    CHECK(min_distance(c).weight == r.d);
    CHECK(r.d >= 4);
    CHECK(check_divisibility(weight_enumerator(c), 3).empty());
    CHECK(r.canon_complete);
    CHECK(hashes.insert(r.hash).second);
  }

  std::stringstream io;
  write_catalog(io, a);
  const Catalog back = read_catalog(io);
  CHECK(serialize(back) == serialize(a));

  cfg.seed = 78;
  const Catalog c = run_search(db, cfg);
  CHECK(c.meta.seed == 78);
}

TEST_CASE("catalog files: malformed lines carry line numbers") {
  std::istringstream in("{\"kind\":\"meta\",\"version\":1}\n");
  try {
    read_catalog(in);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  Catalog cat;
  cat.records.push_back(CodeRecord{});
  std::stringstream io;
  write_catalog(io, cat);
  std::string text = io.str() + "not json\n";
  std::istringstream bad(text);
  try {
    read_catalog(bad);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("catalog_report: examples") {
  Catalog cat;
  cat.meta.d_target = 10;
  cat.stats.items = 1000;
  CodeRecord r;
  r.n = 54;
  r.template_label = "W1";
  r.param_name = "beta";
  r.param = 21;
  r.param_in_range = true;
  r.canon_complete = false;
  r.group = "d=10;A=183,5535";
  cat.records.push_back(r);
  const std::string rep = catalog_report(cat, 54);
  CHECK(rep.find("previously known : 0,3,6,9,12,15,18\n") != std::string::npos);
  CHECK(rep.find("catalog found    : 21\n") != std::string::npos);
  CHECK(rep.find("new vs known     : 21\n") != std::string::npos);
  CHECK(rep.find("previously known : 12,15,18,21,24,27\n") != std::string::npos);

  const std::string empty = catalog_report(Catalog{}, 54);
  CHECK(empty.find("catalog found    : -") != std::string::npos);
  CHECK(empty.find("note:") == std::string::npos);
  CHECK(catalog_report(Catalog{}, 60).find("3,6,12") != std::string::npos);
  CHECK(catalog_report(Catalog{}, 18).find("no published reference values") != std::string::npos);

  Catalog c66;
  CodeRecord a;
  a.n = 66;
  a.template_label = "W1";
  a.param_name = "alpha";
  a.param = 6;
  a.param_in_range = true;
  c66.records.push_back(a);
  c66.stats.items = 5;
  const std::string rep66 = catalog_report(c66, 66);
  CHECK(rep66.find("previously known : 17,21,23,26,30,43,46\n") != std::string::npos);
  CHECK(rep66.find("new vs known     : 6\n") != std::string::npos);

  a.param = 900;
  a.param_in_range = false;
  c66.records = {a};
  CHECK(catalog_report(c66, 66).find("OUT OF RANGE     : 900") != std::string::npos);
  CHECK(catalog_report(c66, 66).find("note: no new values found in 5 samples") != std::string::npos);
}
