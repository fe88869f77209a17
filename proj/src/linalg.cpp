#include "ffdio/linalg.hpp"

#include <algorithm>

#include "modular.hpp"

namespace ffdio {

namespace {

using detail::u64;

constexpr u64 kCertPrime = (u64{1} << 61) - 1;
constexpr u64 kCertPoints[] = {1234567891011ULL, 987654321987ULL, 31415926535897ULL};

bool poly_mod(const Poly& f, u64 t0, u64& out) {
  u64 acc = 0;
  auto c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    u64 ci;
    if (!detail::rat_mod(c[i], kCertPrime, ci)) return false;
    acc = detail::addmod(detail::mulmod(acc, t0, kCertPrime), ci, kCertPrime);
  }
  out = acc;
  return true;
}

// Rank of m specialized at t0 modulo the certificate prime, or nullopt when
// some entry has a pole there.
std::optional<std::size_t> specialized_rank(const KMatrix& m, u64 t0) {
  std::vector<std::vector<u64>> s(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    s[i].resize(m[i].size());
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      u64 n, d;
      if (!poly_mod(m[i][j].num(), t0, n) || !poly_mod(m[i][j].den(), t0, d) || d == 0) return std::nullopt;
      s[i][j] = detail::mulmod(n, detail::invmod(d, kCertPrime), kCertPrime);
    }
  }
  return detail::rank_mod_p(s, kCertPrime);
}

std::size_t column_count(const KMatrix& m) {
  std::size_t c = m.empty() ? 0 : m[0].size();
  for (const auto& row : m)
    if (row.size() != c) throw DomainError("ragged matrix");
  return c;
}

// Forward elimination; returns the rank and, through det, the determinant of
// a square input.
std::size_t eliminate(KMatrix a, RatFunc* det) {
  const std::size_t rows = a.size(), cols = column_count(a);
  std::size_t rank = 0;
  RatFunc d(1);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) {
      d = RatFunc();
      continue;
    }
    if (piv != rank) {
      std::swap(a[piv], a[rank]);
      d = -d;
    }
    d *= a[rank][c];
    RatFunc inv = a[rank][c].inverse();
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c].is_zero()) continue;
      RatFunc f = a[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k)
        if (!a[rank][k].is_zero()) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  if (det) *det = rank == rows && rows == cols ? d : RatFunc();
  return rank;
}

}  // namespace

std::size_t rank_over_K_exact(const KMatrix& m) { return eliminate(m, nullptr); }

std::size_t rank_over_K(const KMatrix& m) {
  const std::size_t full = std::min(m.size(), column_count(m));
  if (full == 0) return 0;
  for (u64 t0 : kCertPoints) {
    auto r = specialized_rank(m, t0);
    if (r && *r == full) return full;
  }
  return rank_over_K_exact(m);
}

RatFunc determinant(const KMatrix& m) {
  if (column_count(m) != m.size()) throw DomainError("determinant of a non-square matrix");
  RatFunc d;
  eliminate(m, &d);
  return d;
}

bool is_nonsingular(const KMatrix& m) {
  if (column_count(m) != m.size()) throw DomainError("nonsingularity of a non-square matrix");
  return rank_over_K(m) == m.size();
}

KMatrix identity_matrix(std::size_t n) {
  KMatrix id(n, std::vector<RatFunc>(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = RatFunc(1);
  return id;
}

KMatrix multiply(const KMatrix& a, const KMatrix& b) {
  const std::size_t inner = column_count(a), cols = column_count(b);
  if (inner != b.size()) throw DomainError("matrix shapes do not compose");
  KMatrix c(a.size(), std::vector<RatFunc>(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

KMatrix inverse(const KMatrix& m) {
  const std::size_t n = m.size();
  if (column_count(m) != n) throw DomainError("inverse of a non-square matrix");
  KMatrix a = m, inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular over K");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    RatFunc s = a[c][c].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= s;
      inv[c][k] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      RatFunc f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[c][k].is_zero()) a[r][k] -= f * a[c][k];
        if (!inv[c][k].is_zero()) inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

namespace {

// v -= c * w on sorted sparse vectors.
void axpy(SparseVec& v, const Rat& c, const SparseVec& w) {
  SparseVec out;
  out.reserve(v.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
      out.push_back(std::move(v[i++]));
    } else if (i == v.size() || w[j].first < v[i].first) {
      out.emplace_back(w[j].first, -c * w[j].second);
      ++j;
    } else {
      Rat x = v[i].second - c * w[j].second;
      if (x != 0) out.emplace_back(v[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  v = std::move(out);
}

}  // namespace

void RationalSpan::reduce(SparseVec& v, std::vector<Rat>& used) const {
  used.assign(rows_.size(), Rat(0));
  std::size_t k = 0;
  while (k < v.size()) {
    auto it = pivot_row_.find(v[k].first);
    if (it == pivot_row_.end()) {
      ++k;
      continue;
    }
    Rat c = v[k].second;
    used[it->second] += c;
    axpy(v, c, rows_[it->second].v);
  }
}

bool RationalSpan::add(const SparseVec& v) {
  SparseVec w = v;
  std::vector<Rat> used;
  reduce(w, used);
  if (w.empty()) return false;
  const std::size_t id = rows_.size();
  Rat lead = w.front().second;
  for (auto& e : w) e.second /= lead;
  std::vector<Rat> combo(id + 1, Rat(0));
  combo[id] = 1;
  for (std::size_t r = 0; r < id; ++r) {
    if (used[r] == 0) continue;
    for (std::size_t k = 0; k < rows_[r].combo.size(); ++k) combo[k] -= used[r] * rows_[r].combo[k];
  }
  for (auto& c : combo) c /= lead;
  for (auto& row : rows_) row.combo.resize(id + 1, Rat(0));
  pivot_row_[w.front().first] = id;
  rows_.push_back(Row{std::move(w), std::move(combo)});
  return true;
}

std::optional<std::vector<Rat>> RationalSpan::coordinates(const SparseVec& v) const {
  SparseVec w = v;
  std::vector<Rat> used;
  reduce(w, used);
  if (!w.empty()) return std::nullopt;
  std::vector<Rat> coords(rows_.size(), Rat(0));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (used[r] == 0) continue;
    for (std::size_t k = 0; k < rows_[r].combo.size(); ++k) coords[k] += used[r] * rows_[r].combo[k];
  }
  return coords;
}

std::vector<SparseVec> encode_sequences(const std::vector<std::vector<RatFunc>>& values,
                                        std::vector<std::size_t>* block_end) {
  std::vector<SparseVec> out(values.size());
  if (block_end) block_end->clear();
  if (values.empty()) return out;
  const std::size_t n = values[0].size();
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Poly lcm(Rat(1));
    for (const auto& seq : values)
      if (!seq[i].is_zero() && seq[i].den().degree() > 0) lcm = exact_div(lcm * seq[i].den(), poly_gcd(lcm, seq[i].den()));
    int width = 0;
    for (std::size_t g = 0; g < values.size(); ++g) {
      const RatFunc& v = values[g][i];
      if (v.is_zero()) continue;
      Poly scaled = v.num() * exact_div(lcm, v.den());
      auto c = scaled.coeffs();
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) out[g].emplace_back(offset + k, c[k]);
      width = std::max(width, scaled.degree() + 1);
    }
    offset += static_cast<std::size_t>(width);
    if (block_end) block_end->push_back(offset);
  }
  return out;
}

std::vector<std::size_t> RationalSpan::pivots() const {
  std::vector<std::size_t> p;
  for (const auto& [idx, row] : pivot_row_) p.push_back(idx);
  return p;
}

}  // namespace ffdio
