#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "ffdio/errors.hpp"

namespace ffdio {

// Elements of the base field k = Q. mpq_class keeps numerator and
// denominator coprime with a positive denominator after canonicalize().
using Rat = mpq_class;
using Int = mpz_class;

// Parses "p", "-p" or "p/q" (q != 0). Whitespace is not accepted.
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  Rat r;
  auto bad = [&] { return Error("invalid rational \"" + s + "\" (expected p or p/q)"); };
  if (s.empty()) throw bad();
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw bad();
  }
  if (r.set_str(s, 10) != 0) throw bad();
  if (r.get_den() == 0) throw DivisionByZero("rational with zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(10); }
inline std::string to_string(const Int& z) { return z.get_str(10); }

// n/d in lowest terms; d != 0.
inline Rat make_rat(const Int& n, const Int& d) {
  if (d == 0) throw DivisionByZero("rational with zero denominator");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

}  // namespace ffdio
