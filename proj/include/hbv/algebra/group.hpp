#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace hbv {

/// Finite group given by a multiplication table: table[a][b] = index of a*b.
/// Identity and inverses are derived from the table.
class FiniteGroup {
 public:
  /// Validates closure, Latin-square property, identity, inverses and
  /// associativity; throws ValidationError naming the failing axiom.
  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);

  /// "Z2","Z3","Z4","Z6","S3","D4","Q8" (also "Zn" for any n >= 1).
  static FiniteGroup preset(const std::string& name);
  static std::vector<std::string> preset_names();
  static FiniteGroup from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::size_t order() const { return names_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::string& name(std::size_t a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  /// Classes ordered by smallest member; members ascending.
  std::vector<std::vector<std::size_t>> conjugacy_classes() const;
  /// Index of the conjugacy class of each element (same ordering as above).
  std::vector<std::size_t> class_index() const;
  /// Centralizer of g as a group in its own right, with elements in
  /// ascending order of their indices in this group.
  FiniteGroup centralizer(std::size_t g) const;
  bool is_abelian() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

}  // namespace hbv
