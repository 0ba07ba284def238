#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "qcforge/codefile.hpp"
#include "qcforge/error.hpp"
#include "qcforge/kernels.hpp"
#include "qcforge/lincode.hpp"
#include "qcforge/templates.hpp"
#include "support.hpp"

using namespace qcforge;
using namespace qctest;

namespace {

BinaryCode bin(std::size_t n, std::initializer_list<const char*> rows) {
  std::vector<BitVec> v;
  for (const char* r : rows) v.push_back(BitVec::from_string(r));
  return BinaryCode::from_rows(n, v);
}

QuaternaryCode quat(std::size_t n, std::initializer_list<const char*> rows) {
  std::vector<Gf4Vec> v;
  for (const char* r : rows) v.push_back(Gf4Vec::from_string(r));
  return QuaternaryCode::from_rows(n, v);
}

std::vector<std::uint64_t> coeffs(std::initializer_list<std::uint64_t> a) { return a; }

// The [6,3] cubic code from i2 and <(1,1)>, written out by hand: x = 11 gives
// 11|11|11, the generator (1,1) gives a = 11, b = 00, hence 11|00|11, and
// w(1,1) gives 00|11|11.
BinaryCode cubic6() { return bin(6, {"111111", "110011", "001111"}); }

}  // namespace

TEST_CASE("from_rows: worked examples") {
  const BinaryCode i2 = bin(2, {"11"});
  CHECK(i2.dimension() == 1);
  CHECK(bin(2, {"11", "11"}).dimension() == 1);
  CHECK(bin(4, {"1100", "0011", "1111"}).dimension() == 2);
  CHECK(BinaryCode::zero(5).dimension() == 0);
  CHECK(BinaryCode::full(5).dimension() == 5);
  std::vector<BitVec> bad = {BitVec::from_string("101")};
  CHECK_THROWS_AS(BinaryCode::from_rows(4, bad), PreconditionError);
}

TEST_CASE("from_rows: RREF is canonical under random basis changes") {
  Rng rng(1);
  for (int it = 0; it < 1000; ++it) {
    const std::size_t n = 1 + rng() % 24;
    const BinaryCode c = random_binary_code(n, rng() % (n + 1), rng);
    // Random invertible recombination: start from the rows, add random
    // combinations, shuffle, then re-reduce.
    std::vector<BitVec> rows = c.rows();
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (i != j && (rng() & 1u)) rows[i] ^= rows[j];
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.push_back(BitVec(n));
    if (!rows.empty() && rows.size() > 1) rows.push_back(rows[0] ^ rows[1 % rows.size()]);
    CHECK(BinaryCode::from_rows(n, rows) == c);
    for (std::size_t i = 0; i < c.dimension(); ++i) {
      CHECK(c.rows()[i].get(c.pivots()[i]));
      for (std::size_t j = 0; j < c.dimension(); ++j)
        if (i != j) CHECK_FALSE(c.rows()[j].get(c.pivots()[i]));
    }
  }
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 12;
    const QuaternaryCode c = random_quaternary_code(n, rng() % (n + 1), rng);
    std::vector<Gf4Vec> rows;
    for (const Gf4Vec& r : c.rows()) rows.push_back(r.scaled(Gf4(std::uint8_t(1 + rng() % 3))));
    for (std::size_t i = 1; i < rows.size(); ++i) rows[i] += rows[i - 1].scaled(Gf4::w());
    std::shuffle(rows.begin(), rows.end(), rng);
    CHECK(QuaternaryCode::from_rows(n, rows) == c);
  }
}

TEST_CASE("duals: worked examples") {
  const BinaryCode i2 = bin(2, {"11"});
  CHECK(euclidean_dual(i2) == i2);
  CHECK(euclidean_dual(BinaryCode::zero(4)) == BinaryCode::full(4));
  CHECK(euclidean_dual(bin(4, {"1000"})) == bin(4, {"0100", "0010", "0001"}));

  const QuaternaryCode h11 = quat(2, {"11"}), h1w = quat(2, {"1w"});
  CHECK(hermitian_dual(h11) == h11);
  CHECK(hermitian_dual(h1w) == h1w);
  CHECK(hermitian_dual(QuaternaryCode::zero(2)) == QuaternaryCode::full(2));
  // Euclidean and Hermitian duals differ in general: <1w> is not
  // Euclidean self-orthogonal since 1 + w^2 != 0.
  CHECK(euclidean_dual(h1w) != h1w);
  CHECK(hermitian_dual(h1w) == conjugate(euclidean_dual(h1w)));
}

TEST_CASE("duals: involution and dimension additivity") {
  Rng rng(2);
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = 1 + rng() % 40;
    const BinaryCode c = random_binary_code(n, rng() % (n + 1), rng);
    const BinaryCode d = euclidean_dual(c);
    CHECK(c.dimension() + d.dimension() == n);
    CHECK(euclidean_dual(d) == c);
    for (const BitVec& x : c.rows())
      for (const BitVec& y : d.rows()) CHECK_FALSE(x.dot(y));
  }
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 16;
    const QuaternaryCode c = random_quaternary_code(n, rng() % (n + 1), rng);
    const QuaternaryCode h = hermitian_dual(c), e = euclidean_dual(c);
    CHECK(c.dimension() + h.dimension() == n);
    CHECK(hermitian_dual(h) == c);
    CHECK(euclidean_dual(e) == c);
    for (const Gf4Vec& x : c.rows())
      for (const Gf4Vec& y : h.rows()) CHECK(x.hermitian(y).is_zero());
  }
}

TEST_CASE("is_self_dual: worked examples") {
  CHECK(is_self_dual(bin(2, {"11"})));
  CHECK_FALSE(is_self_dual(bin(2, {"10"})));
  CHECK(is_self_dual(quat(2, {"1w"}), InnerProduct::Hermitian));
  CHECK(is_self_dual(quat(2, {"11"}), InnerProduct::Hermitian));
  CHECK_FALSE(is_self_dual(quat(2, {"10"})));
  CHECK_FALSE(is_self_dual(bin(3, {"111"})));
  CHECK_THROWS_AS(is_self_dual(bin(2, {"11"}), InnerProduct::Hermitian), PreconditionError);
  CHECK_THROWS_AS(is_self_dual(quat(2, {"11"}), InnerProduct::Euclidean), PreconditionError);
}

TEST_CASE("cyclic_code: worked examples") {
  const BinaryCode even3 = cyclic_code(PolyF2::from_string("11"), 3);
  CHECK(even3 == bin(3, {"110", "011"}));
  CHECK(cyclic_code(PolyF2::from_string("111"), 3) == bin(3, {"111"}));
  CHECK(cyclic_code(PolyF2::monomial(0), 4) == BinaryCode::full(4));
  CHECK_THROWS_AS(cyclic_code(PolyF2::from_string("111"), 4), PreconditionError);
  // Hamming [7,4,3] from Y^3+Y+1.
  const BinaryCode ham = cyclic_code(PolyF2::from_string("1011"), 7);
  CHECK(ham.dimension() == 4);
  CHECK(min_distance(ham).weight == 3);
}

TEST_CASE("weight_enumerator and min_distance: worked examples") {
  const BinaryCode i2 = bin(2, {"11"});
  CHECK(weight_enumerator(i2).coefficients() == coeffs({1, 0, 1}));
  CHECK(min_distance(i2).weight == 2);
  CHECK(min_distance(bin(3, {"111"})).weight == 3);
  CHECK(weight_enumerator(cubic6()).coefficients() == coeffs({1, 0, 3, 0, 3, 0, 1}));
  CHECK(weight_enumerator(cubic6()).to_string() == "0:1 2:3 4:3 6:1");
  CHECK(min_distance(cubic6()).weight == 2);
  CHECK(weight_enumerator(bin(3, {"110", "011"})).coefficients() == coeffs({1, 0, 3, 0}));

  const auto capped = weight_enumerator(cubic6(), 2);
  CHECK(capped.cap() == std::optional<std::size_t>(2));
  CHECK(capped[2] == 3);
  CHECK(capped[4] == 0);
  CHECK(WeightEnumerator::parse("0:1 2:3 4:3 6:1", 6) == weight_enumerator(cubic6()));

  // Early stop returns a bound as soon as a light enough word appears.
  const DistanceResult early = min_distance(cubic6(), 5);
  CHECK(early.bound_only);
  CHECK(early.weight <= 5);
  CHECK_THROWS(min_distance(BinaryCode::zero(4)));
}

TEST_CASE("weight_enumerator: Gray kernels agree with naive recomputation") {
  Rng rng(3);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + rng() % 20;
    const BinaryCode c = random_binary_code(n, rng() % (std::min<std::size_t>(n, 10) + 1), rng);
    const auto naive = naive_wenum(c);
    const WeightEnumerator w = weight_enumerator(c);
    CHECK(w.coefficients() == naive);
    CHECK(w.total() == (std::uint64_t{1} << c.dimension()));
    if (c.dimension() > 0) CHECK(min_distance(c).weight == *w.min_distance());
  }
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng() % 10;
    const QuaternaryCode c = random_quaternary_code(n, rng() % (std::min<std::size_t>(n, 5) + 1), rng);
    const WeightEnumerator w = weight_enumerator(c);
    CHECK(w.coefficients() == naive_wenum(c));
    CHECK(w.total() == (std::uint64_t{1} << (2 * c.dimension())));
    if (c.dimension() > 0) CHECK(min_distance(c).weight == *w.min_distance());
  }
}

TEST_CASE("weight_enumerator: scalar and AVX2 variants agree") {
  if (!kernels::isa_available(kernels::Isa::Avx2)) {
    MESSAGE("AVX2 not available on this machine; only the scalar variant is exercised");
    return;
  }
  Rng rng(4);
  EnumOptions scalar, avx;
  scalar.isa = kernels::Isa::Scalar;
  avx.isa = kernels::Isa::Avx2;
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 2 + rng() % 250;  // up to four words per plane
    const BinaryCode c = random_binary_code(n, rng() % 19, rng);
    CHECK(weight_enumerator(c, std::nullopt, scalar) == weight_enumerator(c, std::nullopt, avx));
    if (c.dimension() == 0) continue;
    CHECK(min_distance(c, std::nullopt, scalar).weight == min_distance(c, std::nullopt, avx).weight);
    const std::size_t stop = 1 + rng() % n;
    const DistanceResult a = min_distance(c, stop, scalar), b = min_distance(c, stop, avx);
    CHECK(a.bound_only == b.bound_only);
    if (!a.bound_only) CHECK(a.weight == b.weight);
  }
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + rng() % 120;
    const QuaternaryCode c = random_quaternary_code(n, rng() % 9, rng);
    CHECK(weight_enumerator(c, std::nullopt, scalar) == weight_enumerator(c, std::nullopt, avx));
  }
  // Direct kernel calls on sub-ranges must add up to the whole histogram.
  const BinaryCode c = random_binary_code(100, 14, rng);
  const auto packed = c.packed_rows();
  const kernels::GrayBasis basis{packed, c.dimension(), words_for(100), 1};
  for (kernels::Isa isa : {kernels::Isa::Scalar, kernels::Isa::Avx2}) {
    const std::uint64_t dom = kernels::domain_size(basis, isa);
    std::vector<std::uint64_t> whole(129, 0), parts(129, 0);
    kernels::weight_histogram(basis, isa, 0, dom, whole);
    kernels::weight_histogram(basis, isa, 0, dom / 3, parts);
    kernels::weight_histogram(basis, isa, dom / 3, dom, parts);
    CHECK(whole == parts);
    std::vector<std::uint64_t> ref(naive_wenum(c));
    ref.resize(129, 0);
    CHECK(whole == ref);
  }
}

TEST_CASE("weight_enumerator: thread count and walk order do not change results") {
  Rng rng(5);
  const BinaryCode c = random_binary_code(40, 20, rng);
  EnumOptions one, four, shuffled;
  one.threads = 1;
  four.threads = 4;
  shuffled.order_seed = 99;
  const WeightEnumerator ref = weight_enumerator(c, std::nullopt, one);
  CHECK(weight_enumerator(c, std::nullopt, four) == ref);
  CHECK(weight_enumerator(c, std::nullopt, shuffled) == ref);
  CHECK(min_distance(c, std::nullopt, four).weight == *ref.min_distance());
  EnumOptions tiny;
  tiny.max_info_bits = 10;
  CHECK_THROWS_AS(weight_enumerator(c, std::nullopt, tiny), BudgetExceeded);
}

TEST_CASE("classify_type and check_divisibility") {
  const WeightEnumerator i2(2, {1, 0, 1});
  CHECK(classify_type(i2, true) == SelfDualType::TypeI);
  CHECK(classify_type(i2, false) == SelfDualType::NotSelfDual);
  const WeightEnumerator e8(8, {1, 0, 0, 0, 14, 0, 0, 0, 1});
  CHECK(classify_type(e8, true) == SelfDualType::TypeII);
  // The extended Hamming code, built rather than typed in.
  std::vector<BitVec> rows;
  const BinaryCode ham = cyclic_code(PolyF2::from_string("1011"), 7);
  for (const BitVec& r : ham.rows()) {
    BitVec x(8);
    for (std::size_t i = 0; i < 7; ++i) x.set(i, r.get(i));
    x.set(7, r.weight() % 2);
    rows.push_back(x);
  }
  CHECK(weight_enumerator(BinaryCode::from_rows(8, rows)) == e8);

  CHECK(check_divisibility(WeightEnumerator(6, {1, 0, 3, 0, 3, 0, 1}), 3).empty());
  const auto v = check_divisibility(i2, 3);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == std::pair<std::size_t, std::uint64_t>{2, 1});

  const WenumTemplate w4 = templates_for_length(60).at(3);
  REQUIRE(w4.label == "W4");
  const auto bad = check_divisibility(evaluate_template(w4), 3);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == std::pair<std::size_t, std::uint64_t>{14, 24128});
  CHECK_THROWS_AS(check_divisibility(i2, 4), PreconditionError);
}

TEST_CASE("code files: round trip and diagnostics") {
  std::istringstream in(
      "# comment\n"
      "code i2 q=2 n=2 k=1 d=2\n"
      "11\n"
      "\n"
      "code h2 q=4 n=2 k=1\n"
      "1w\n");
  const auto codes = parse_codes(in);
  REQUIRE(codes.size() == 2);
  CHECK(codes[0].name == "i2");
  CHECK(codes[0].is_binary());
  CHECK(codes[0].claimed_d == std::optional<std::size_t>(2));
  CHECK(codes[0].line == 2);
  CHECK(codes[1].quaternary() == quat(2, {"1w"}));

  std::ostringstream out;
  for (const auto& c : codes) write_code(out, c);
  std::istringstream back(out.str());
  const auto again = parse_codes(back);
  REQUIRE(again.size() == 2);
  CHECK(again[0].binary() == codes[0].binary());
  CHECK(again[1].quaternary() == codes[1].quaternary());
  CHECK(again[0].claimed_d == codes[0].claimed_d);

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream s(text);
    try {
      parse_codes(s);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("code a q=2 n=2 k=1\n12\n") == 2);
  CHECK(line_of("\ncode a q=3 n=2 k=1\n11\n") == 2);
  CHECK(line_of("code a q=2 n=2 k=1\n11\n\n11\n") == 4);
  CHECK(line_of("code a q=2 n=3 k=1\n11\n") == 2);
  CHECK(line_of("code a q=2 n=2 k=2\n11\n11\n") == 1);
  CHECK(line_of("code a q=4 n=2 k=1\n1x\n") == 2);
  CHECK(line_of("code a q=2 n=2\n11\n") == 1);
}
