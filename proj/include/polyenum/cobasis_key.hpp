#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace polyenum {

using VarIndex = std::size_t;

/// Restart descriptor of a reverse-search node: its sorted cobasis plus the
/// tree depth at which it sits.
struct CobasisKey {
  std::size_t depth = 0;
  std::vector<VarIndex> indices;

  /// True when indices are strictly increasing.
  bool well_formed() const;

  /// Text form "depth k i1 ... ik".
  std::string to_string() const;

  /// Inverse of to_string. Throws std::invalid_argument on bad syntax or
  /// indices that are not strictly increasing.
  static CobasisKey parse(std::string_view text);

  friend bool operator==(const CobasisKey&, const CobasisKey&) = default;
  friend auto operator<=>(const CobasisKey&, const CobasisKey&) = default;
};

}  // namespace polyenum
