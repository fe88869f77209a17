#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "ffdio/linalg.hpp"
#include "ffdio/parallel.hpp"
#include "test_util.hpp"

using namespace ffdio;

namespace {

KMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  KMatrix m(rows, std::vector<RatFunc>(cols));
  for (auto& r : m)
    for (auto& v : r) v = test::random_ratfunc(rng, 2, 3);
  return m;
}

// rows x cols matrix whose rows are random K-combinations of r random rows.
KMatrix low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  return multiply(random_matrix(rng, rows, r), random_matrix(rng, r, cols));
}

// Dense rank over Q by plain elimination, for checking RationalSpan.
std::size_t dense_rank(std::vector<std::vector<Rat>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

SparseVec sparse(const std::vector<Rat>& dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.emplace_back(i, dense[i]);
  return v;
}

}  // namespace

TEST_CASE("rank with the certificate agrees with exact elimination") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = static_cast<std::size_t>(test::uniform(rng, 1, 4));
    std::size_t cols = static_cast<std::size_t>(test::uniform(rng, 1, 4));
    std::size_t r = static_cast<std::size_t>(test::uniform(rng, 1, 3));
    KMatrix m = trial % 2 ? random_matrix(rng, rows, cols) : low_rank(rng, rows, cols, r);
    std::size_t exact = rank_over_K_exact(m);
    CHECK(rank_over_K(m) == exact);
    if (trial % 2 == 0) CHECK(exact <= r);
  }
}

TEST_CASE("rank of small hand examples") {
  RatFunc t = RatFunc::t();
  CHECK(rank_over_K({{1, 0}, {0, 1}}) == 2);
  CHECK(rank_over_K({{1, t}, {t, t * t}}) == 1);
  CHECK(rank_over_K({{0, 0}, {0, 0}}) == 0);
  CHECK(rank_over_K({{1, t, t * t}, {1, t + 1, (t + 1) * (t + 1)}, {1, t + 2, (t + 2) * (t + 2)}}) == 3);
  CHECK(determinant({{1, t}, {t, 1}}) == RatFunc(1) - t * t);
}

TEST_CASE("inverse and determinant are exact") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(test::uniform(rng, 1, 3));
    KMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    CHECK(determinant(multiply(a, b)) == determinant(a) * determinant(b));
    if (!is_nonsingular(a)) continue;
    CHECK(multiply(inverse(a), a) == identity_matrix(n));
    CHECK(multiply(a, inverse(a)) == identity_matrix(n));
  }
  RatFunc t = RatFunc::t();
  CHECK_THROWS_AS(inverse({{1, 0}, {t, 0}}), SingularMatrix);
  CHECK_FALSE(is_nonsingular(low_rank(rng, 3, 3, 2)));
}

TEST_CASE("RationalSpan rank and coordinates") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 8;
    std::vector<std::vector<Rat>> added;
    RationalSpan span;
    std::vector<std::vector<Rat>> accepted;
    for (int k = 0; k < 10; ++k) {
      std::vector<Rat> v(dim);
      if (k > 2 && test::uniform(rng, 0, 2) == 0) {
        // a combination of earlier vectors
        for (const auto& w : added) {
          Rat c = test::uniform(rng, -2, 2);
          for (std::size_t i = 0; i < dim; ++i) v[i] += c * w[i];
        }
      } else {
        for (auto& x : v)
          if (test::uniform(rng, 0, 2) == 0) x = Rat(test::uniform(rng, -5, 5), test::uniform(rng, 1, 3));
        for (auto& x : v) x.canonicalize();
      }
      added.push_back(v);
      if (span.add(sparse(v))) accepted.push_back(v);
      CHECK(span.rank() == dense_rank(added));
    }
    CHECK(span.pivots().size() == span.rank());

    std::vector<Rat> target(dim);
    std::vector<Rat> coeff;
    for (const auto& w : accepted) {
      coeff.emplace_back(test::uniform(rng, -3, 3));
      for (std::size_t i = 0; i < dim; ++i) target[i] += coeff.back() * w[i];
    }
    auto c = span.coordinates(sparse(target));
    REQUIRE(c.has_value());
    CHECK(*c == coeff);

    if (span.rank() < dim) {
      // Some unit vector lies outside the span.
      bool found_outside = false;
      for (std::size_t i = 0; i < dim && !found_outside; ++i)
        found_outside = !span.coordinates(SparseVec{{i, Rat(1)}}).has_value();
      CHECK(found_outside);
    }
  }
}

TEST_CASE("encode_sequences preserves rational relations") {
  RatFunc t = RatFunc::t();
  std::vector<RatFunc> a, b, c, d;
  for (int i = 1; i <= 6; ++i) {
    RatFunc ti = t.pow(i);
    a.push_back(ti);
    b.push_back(RatFunc(1) / (t + i));
    c.push_back(RatFunc(2) * a.back() - RatFunc(3) * b.back());
    d.push_back(ti * t);
  }
  auto enc = encode_sequences({a, b, c, d});
  RationalSpan span;
  CHECK(span.add(enc[0]));
  CHECK(span.add(enc[1]));
  CHECK_FALSE(span.add(enc[2]));
  CHECK(span.add(enc[3]));
  auto coords = span.coordinates(enc[2]);
  REQUIRE(coords.has_value());
  CHECK(*coords == std::vector<Rat>{2, -3, 0});

  std::vector<std::size_t> ends;
  encode_sequences({a, b}, &ends);
  CHECK(ends.size() == 6);
  CHECK(std::is_sorted(ends.begin(), ends.end()));
}

TEST_CASE("parallel_for writes by index and rethrows the lowest failing index") {
  std::vector<long> out(1000);
  parallel_for(out.size(), 8, [&](std::size_t i) { out[i] = static_cast<long>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<long>(i * i));

  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i % 7 == 3) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "3");
  }
}
