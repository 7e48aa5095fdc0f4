#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "hbv/tqft/tqft.hpp"

namespace hbv::testing {

inline Cobordism cob(const char* name) { return Cobordism::preset(name); }

inline Cobordism layer(int left, const Cobordism& g, int right) {
  return tensor(tensor(Cobordism::identity(left), g), Cobordism::identity(right));
}

/// in-port i -> out n+i, in m+j -> out j.
inline Cobordism block_braid(int m, int n) {
  std::vector<int> s;
  for (int i = 1; i <= m; ++i) s.push_back(n + i);
  for (int j = 1; j <= n; ++j) s.push_back(j);
  return Cobordism::permutation(s);
}

inline Cobordism random_cobordism(std::mt19937& rng, int p, int q, int max_genus = 2) {
  const int k = std::uniform_int_distribution<int>(1, p + q + 1)(rng);
  std::uniform_int_distribution<int> pick(0, k - 1), genus(0, max_genus);
  std::vector<CobComponent> comps(static_cast<std::size_t>(k));
  for (int i = 1; i <= p; ++i) comps[static_cast<std::size_t>(pick(rng))].in_legs.push_back(i);
  for (int i = 1; i <= q; ++i) comps[static_cast<std::size_t>(pick(rng))].out_legs.push_back(i);
  for (auto& c : comps) c.genus = (c.in_legs.empty() && c.out_legs.empty()) ? genus(rng) % 2 : genus(rng);
  return Cobordism(p, q, comps);
}

/// A random word in pants, copants, caps and twists whose composite is the
/// connected genus-g surface p -> q.
inline std::vector<Cobordism> random_decomposition(std::mt19937& rng, int g, int p, int q) {
  std::vector<Cobordism> word;
  auto coin = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; };
  auto pos = [&](int w) { return std::uniform_int_distribution<int>(0, w - 2)(rng); };
  int w = p;
  if (w == 0) {
    word.push_back(cob("cap_out"));
    w = 1;
  }
  while (w > 1) {
    if (coin()) {
      const int i = pos(w);
      word.push_back(layer(i, cob("twist"), w - 2 - i));
    }
    const int i = pos(w);
    word.push_back(layer(i, cob("pants"), w - 2 - i));
    --w;
  }
  if (coin()) {  // unit insertion
    word.push_back(coin() ? tensor(cob("cyl"), cob("cap_out")) : tensor(cob("cap_out"), cob("cyl")));
    word.push_back(cob("pants"));
  }
  int handles = g;
  while (w < std::max(q, 1) || handles > 0) {
    if (handles > 0 && (w >= std::max(q, 1) || coin())) {
      if (w >= 2 && coin()) {
        const int i = pos(w);
        word.push_back(layer(i, cob("pants"), w - 2 - i));
        word.push_back(layer(i, cob("copants"), w - 2 - i));
      } else {
        const int i = std::uniform_int_distribution<int>(0, w - 1)(rng);
        word.push_back(layer(i, cob("copants"), w - 1 - i));
        if (coin()) word.push_back(layer(i, cob("twist"), w - 1 - i));
        word.push_back(layer(i, cob("pants"), w - 1 - i));
      }
      --handles;
    } else {
      const int i = std::uniform_int_distribution<int>(0, w - 1)(rng);
      word.push_back(layer(i, cob("copants"), w - 1 - i));
      ++w;
    }
  }
  if (q == 0) word.push_back(cob("cap_in"));
  if (word.empty()) word.push_back(cob("cyl"));
  return word;
}

}  // namespace hbv::testing
