#pragma once

// Independent reference implementations for the tests. Deliberately naive.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lcsfrogs/words.hpp"

namespace oracle {

using lcsfrogs::Symbol;
using Seq = std::vector<Symbol>;

// Full (n+1) x (m+1) table.
inline std::int64_t lcs(const Seq& a, const Seq& b) {
  std::vector<std::vector<std::int64_t>> t(a.size() + 1, std::vector<std::int64_t>(b.size() + 1));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
  return t[a.size()][b.size()];
}

// Matches restricted to |i - j| <= band.
inline std::int64_t lcs_band(const Seq& a, const Seq& b, std::int64_t band) {
  std::vector<std::vector<std::int64_t>> t(a.size() + 1, std::vector<std::int64_t>(b.size() + 1));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const auto diff = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j);
      const bool ok = a[i - 1] == b[j - 1] && diff <= band && -diff <= band;
      t[i][j] = std::max({t[i - 1][j], t[i][j - 1], ok ? t[i - 1][j - 1] + 1 : 0});
    }
  return t[a.size()][b.size()];
}

inline Seq periodic(const Seq& w, std::size_t n) {
  Seq out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = w[i % w.size()];
  return out;
}

inline Seq seq(const std::string& digits) {
  Seq out;
  for (char c : digits) out.push_back(static_cast<Symbol>(c - '0'));
  return out;
}

// Every word of length exactly len over `symbols` letters.
inline void for_each_word(int len, int symbols, const std::function<void(const Seq&)>& fn) {
  Seq w(len, 0);
  for (;;) {
    fn(w);
    int i = len - 1;
    while (i >= 0 && w[i] == symbols - 1) w[i--] = 0;
    if (i < 0) return;
    ++w[i];
  }
}

inline bool irreducible(const Seq& w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    if (w.size() % p) continue;
    bool same = true;
    for (std::size_t i = p; i < w.size() && same; ++i) same = w[i] == w[i - p];
    if (same) return false;
  }
  return true;
}

// Words whose symbols first appear in order 0,1,2,...: one representative
// per relabelling class.
inline bool canonical(const Seq& w) {
  Symbol next = 0;
  for (Symbol s : w) {
    if (s > next) return false;
    if (s == next) ++next;
  }
  return true;
}

inline int distinct(const Seq& w) {
  int m = 0;
  for (Symbol s : w) m = std::max(m, s + 1);
  return m;
}

}  // namespace oracle
