#include "hbv/algebra/group.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include "hbv/errors.hpp"

namespace hbv {

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const std::size_t n = names_.size();
  if (n == 0) throw ValidationError("group: empty element list");
  if (table_.size() != n) throw ValidationError("group: table has wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != n) throw ValidationError("group: table row has wrong length");
    for (auto x : row)
      if (x >= n) throw ValidationError("group: closure fails (table entry out of range)");
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      if (row_seen[table_[a][b]] || col_seen[table_[b][a]])
        throw ValidationError("group: table is not a Latin square");
      row_seen[table_[a][b]] = true;
      col_seen[table_[b][a]] = true;
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw ValidationError("group: no two-sided identity");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (inverse_[a] == n) throw ValidationError("group: element '" + names_[a] + "' has no two-sided inverse");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw ValidationError("group: associativity fails at (" + names_[a] + ", " + names_[b] + ", " + names_[c] +
                                ")");
}

namespace {

FiniteGroup cyclic(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(i == 0 ? "1" : i == 1 ? "g" : "g" + std::to_string(i));
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(names), std::move(t));
}

template <class T>
FiniteGroup from_elements(const std::vector<T>& elems, const std::vector<std::string>& names,
                          const std::function<T(const T&, const T&)>& op) {
  const std::size_t n = elems.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const T c = op(elems[a], elems[b]);
      t[a][b] = static_cast<std::size_t>(std::find(elems.begin(), elems.end(), c) - elems.begin());
    }
  return FiniteGroup(names, std::move(t));
}

FiniteGroup symmetric3() {
  using P = std::array<int, 3>;
  const std::vector<P> elems = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::string> names = {"()", "(12)", "(13)", "(23)", "(123)", "(132)"};
  // (p q)(i) = p(q(i)): apply q first
  return from_elements<P>(elems, names, [](const P& p, const P& q) { return P{p[q[0]], p[q[1]], p[q[2]]}; });
}

FiniteGroup dihedral4() {
  using E = std::array<int, 2>;  // r^a s^b
  std::vector<E> elems;
  std::vector<std::string> names;
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 4; ++a) {
      elems.push_back({a, b});
      std::string nm = a == 0 ? "" : a == 1 ? "r" : "r" + std::to_string(a);
      if (b) nm += "s";
      names.push_back(nm.empty() ? "1" : nm);
    }
  return from_elements<E>(elems, names, [](const E& x, const E& y) {
    const int a = ((x[0] + (x[1] ? -y[0] : y[0])) % 4 + 4) % 4;
    return E{a, (x[1] + y[1]) % 2};
  });
}

FiniteGroup quaternion8() {
  using E = std::array<int, 2>;  // sign (0 = +, 1 = -), unit (0=1, 1=i, 2=j, 3=k)
  std::vector<E> elems;
  const std::vector<std::string> names = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 4; ++u) elems.push_back({s, u});
  // unit products: table[u][v] = (sign, unit)
  static const E units[4][4] = {{{0, 0}, {0, 1}, {0, 2}, {0, 3}},
                                {{0, 1}, {1, 0}, {0, 3}, {1, 2}},
                                {{0, 2}, {1, 3}, {1, 0}, {0, 1}},
                                {{0, 3}, {0, 2}, {1, 1}, {1, 0}}};
  return from_elements<E>(elems, names, [](const E& x, const E& y) {
    const E p = units[x[1]][y[1]];
    return E{(x[0] + y[0] + p[0]) % 2, p[1]};
  });
}

}  // namespace

FiniteGroup FiniteGroup::preset(const std::string& name) {
  if (name == "S3") return symmetric3();
  if (name == "D4") return dihedral4();
  if (name == "Q8") return quaternion8();
  if (name.size() >= 2 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const std::size_t n = std::stoul(name.substr(1));
    if (n >= 1 && n <= 64) return cyclic(n);
  }
  throw ValidationError("unknown group preset '" + name + "'");
}

std::vector<std::string> FiniteGroup::preset_names() { return {"Z2", "Z3", "Z4", "Z6", "S3", "D4", "Q8"}; }

FiniteGroup FiniteGroup::from_json(const nlohmann::json& j) {
  try {
    auto names = j.at("elements").get<std::vector<std::string>>();
    auto table = j.at("table").get<std::vector<std::vector<std::size_t>>>();
    return FiniteGroup(std::move(names), std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("group file: ") + e.what());
  }
}

nlohmann::json FiniteGroup::to_json() const { return {{"elements", names_}, {"table", table_}}; }

std::vector<std::vector<std::size_t>> FiniteGroup::conjugacy_classes() const {
  const std::size_t n = order();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t g = 0; g < n; ++g) {
    if (seen[g]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t c = mul(mul(x, g), inverse(x));
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<std::size_t> FiniteGroup::class_index() const {
  std::vector<std::size_t> idx(order());
  const auto classes = conjugacy_classes();
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (auto g : classes[c]) idx[g] = c;
  return idx;
}

FiniteGroup FiniteGroup::centralizer(std::size_t g) const {
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < order(); ++x)
    if (mul(x, g) == mul(g, x)) members.push_back(x);
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = i;
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> t(members.size(), std::vector<std::size_t>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i) {
    names.push_back(names_[members[i]]);
    for (std::size_t j = 0; j < members.size(); ++j) t[i][j] = pos.at(mul(members[i], members[j]));
  }
  return FiniteGroup(std::move(names), std::move(t));
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

}  // namespace hbv
