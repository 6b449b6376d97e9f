#include <doctest.h>

#include <random>
#include <set>

#include "hfbord/f2.hpp"
#include "hfbord/f2_kernels.hpp"

using namespace hfb;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double p = 0.4) {
  std::bernoulli_distribution coin(p);
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng)) m.set(i, j);
  return m;
}

// Column space size by brute force: rank = log2 of the number of distinct images.
std::size_t rank_oracle(const BitMatrix& m) {
  std::set<BitVec> images;
  for (std::size_t mask = 0; mask < (std::size_t(1) << m.cols()); ++mask) {
    BitVec x(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      if ((mask >> j) & 1) x.set(j);
    images.insert(m * x);
  }
  std::size_t r = 0;
  while ((std::size_t(1) << r) < images.size()) ++r;
  return r;
}

}  // namespace

TEST_CASE("rank, nullspace and solve agree with enumeration") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    BitMatrix m = random_matrix(rng, r, c);
    const std::size_t rk = rank_oracle(m);
    CHECK(rank(m) == rk);
    auto ns = nullspace(m);
    CHECK(ns.size() == c - rk);
    for (const auto& v : ns) CHECK_FALSE((m * v).any());
    CHECK(column_space(m).size() == rk);
    BitVec x(c);
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1) x.set(j);
    BitVec b = m * x;
    auto s = solve(m, b);
    REQUIRE(s);
    CHECK(m * *s == b);
  }
}

TEST_CASE("solve reports inconsistent systems") {
  BitMatrix m(2, 1);
  m.set(0, 0);
  BitVec b(2);
  b.set(1);
  CHECK_FALSE(solve(m, b).has_value());
}

TEST_CASE("homology dimension is ker - im") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    // d_out: C1 -> C0 random, d_in: C2 -> C1 with columns in ker d_out
    std::size_t n0 = 1 + rng() % 5, n1 = 1 + rng() % 6, n2 = 1 + rng() % 5;
    BitMatrix dout = random_matrix(rng, n0, n1);
    auto ker = nullspace(dout);
    BitMatrix din(n1, n2);
    for (std::size_t j = 0; j < n2 && !ker.empty(); ++j) {
      BitVec col(n1);
      for (const auto& k : ker)
        if (rng() & 1) col ^= k;
      for (auto i : col.support()) din.set(i, j);
    }
    auto h = homology(din, dout);
    CHECK(h.dimension == (n1 - rank_oracle(dout)) - rank_oracle(din));
    CHECK(h.representatives.size() == h.dimension);
    HomologyCoordinates hc(h, din);
    for (std::size_t i = 0; i < h.dimension; ++i) {
      auto c = hc.coords(h.representatives[i]);
      REQUIRE(c);
      CHECK(c->popcount() == 1);
      CHECK(c->get(i));
    }
  }
}

TEST_CASE("homology rejects a non-complex") {
  BitMatrix a = BitMatrix::identity(1);
  CHECK_THROWS_AS(homology(a, a), std::domain_error);
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
  using namespace hfb::kernels;
  std::mt19937_64 rng(3);
  std::vector<Isa> isas = {Isa::Scalar};
#ifdef HFB_X86
  isas.push_back(Isa::Avx2);
#endif
#ifdef HFB_NEON
  isas.push_back(Isa::Neon);
#endif
  const Isa original = active().isa;
  for (std::size_t n : {0, 1, 3, 4, 5, 8, 17, 64, 129}) {
    std::vector<uint64_t> a(n), b(n);
    for (auto& w : a) w = rng();
    for (auto& w : b) w = rng();
    auto ref = a;
    xor_scalar(ref.data(), b.data(), n);
    const bool dref = dot_scalar(a.data(), b.data(), n);
    for (Isa isa : isas) {
      if (!select(isa)) continue;
      auto got = a;
      active().xor_words(got.data(), b.data(), n);
      CHECK(got == ref);
      CHECK(active().dot_words(a.data(), b.data(), n) == dref);
    }
  }
  select(original);
}

TEST_CASE("BitMatrix arithmetic") {
  BitMatrix a = BitMatrix::from_entries(2, 2, {{0, 1}, {1, 0}});
  CHECK(a * a == BitMatrix::identity(2));
  CHECK((a + a).is_zero());
  CHECK(a.transpose() == a);
  CHECK_THROWS_AS(BitMatrix::from_entries(2, 2, {{0, 0}, {0, 0}}), std::invalid_argument);
  SpanTracker s(3);
  BitVec x(3), y(3);
  x.set(0);
  y.set(1);
  CHECK(s.insert(x));
  CHECK(s.insert(y));
  CHECK_FALSE(s.insert(x ^ y));
  CHECK(s.rank() == 2);
}
