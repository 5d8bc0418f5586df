#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/loop_table.hpp"
#include "oracle.hpp"

namespace fixtures {

inline loopforge::LoopTable to_loop(const oracle::Table& t) {
  std::vector<std::vector<loopforge::Label>> raw(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    raw[i].assign(t[i].begin(), t[i].end());
  return loopforge::validate_table(raw);
}

inline oracle::Table to_table(const loopforge::LoopTable& g) {
  oracle::Table t(g.order(), std::vector<int>(g.order()));
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      t[x][y] = g(static_cast<loopforge::Label>(x), static_cast<loopforge::Label>(y));
  return t;
}

inline oracle::Map to_map(const loopforge::Permutation& p) {
  return {p.image().begin(), p.image().end()};
}

inline loopforge::Permutation to_perm(const oracle::Map& m) {
  return loopforge::Permutation(std::vector<loopforge::Label>(m.begin(), m.end()));
}

// Z_{m1} x Z_{m2} x ... in mixed radix, first factor most significant.
inline oracle::Table abelian(std::vector<int> moduli) {
  int n = 1;
  for (int m : moduli) n *= m;
  auto digits = [&](int x) {
    std::vector<int> d(moduli.size());
    for (int i = static_cast<int>(moduli.size()) - 1; i >= 0; --i) {
      d[i] = x % moduli[i];
      x /= moduli[i];
    }
    return d;
  };
  oracle::Table t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto a = digits(x), b = digits(y);
      int z = 0;
      for (std::size_t i = 0; i < moduli.size(); ++i) z = z * moduli[i] + (a[i] + b[i]) % moduli[i];
      t[x][y] = z;
    }
  return t;
}

inline oracle::Table cyclic(int n) { return abelian({n}); }

// Cayley table of the permutation group generated by `gens`, elements
// sorted so the identity is label 0.
inline oracle::Table group_from_generators(const std::vector<oracle::Map>& gens) {
  const auto set = oracle::closure(gens, static_cast<int>(gens.front().size()));
  const std::vector<oracle::Map> elems(set.begin(), set.end());
  std::map<oracle::Map, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  oracle::Table t(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t x = 0; x < elems.size(); ++x)
    for (std::size_t y = 0; y < elems.size(); ++y) t[x][y] = index.at(oracle::then(elems[x], elems[y]));
  return t;
}

inline oracle::Table s3() { return group_from_generators({{1, 0, 2}, {1, 2, 0}}); }
inline oracle::Table d4() { return group_from_generators({{1, 2, 3, 0}, {0, 3, 2, 1}}); }

// Quaternion units: label 2*u + s stands for (-1)^s u with u in 1, i, j, k.
inline oracle::Table q8() {
  // unit product u*v = sign * w
  const int w[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int s[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  oracle::Table t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      t[x][y] = 2 * w[u][v] + ((x % 2 + y % 2 + s[u][v]) % 2);
    }
  return t;
}

// Every group of order <= 8 up to isomorphism.
inline std::vector<std::pair<std::string, oracle::Table>> small_groups() {
  std::vector<std::pair<std::string, oracle::Table>> out;
  for (int n = 1; n <= 8; ++n) out.emplace_back("Z" + std::to_string(n), cyclic(n));
  out.emplace_back("Z2xZ2", abelian({2, 2}));
  out.emplace_back("Z2xZ4", abelian({2, 4}));
  out.emplace_back("Z2xZ2xZ2", abelian({2, 2, 2}));
  out.emplace_back("S3", s3());
  out.emplace_back("D4", d4());
  out.emplace_back("Q8", q8());
  return out;
}

// A nonassociative loop of order 5.
inline oracle::Table order5_loop() {
  return {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
}

}  // namespace fixtures
