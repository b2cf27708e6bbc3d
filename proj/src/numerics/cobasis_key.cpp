#include "polyenum/cobasis_key.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace polyenum {

namespace {

std::size_t next_number(std::string_view& text) {
  auto start = text.find_first_not_of(" \t");
  if (start == std::string_view::npos) throw std::invalid_argument("truncated cobasis key");
  text.remove_prefix(start);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || (ptr != text.data() + text.size() && *ptr != ' ' && *ptr != '\t')) {
    throw std::invalid_argument("bad number in cobasis key");
  }
  text.remove_prefix(static_cast<std::size_t>(ptr - text.data()));
  return value;
}

}  // namespace

bool CobasisKey::well_formed() const {
  return std::adjacent_find(indices.begin(), indices.end(),
                            [](VarIndex a, VarIndex b) { return a >= b; }) == indices.end();
}

std::string CobasisKey::to_string() const {
  std::string out = std::to_string(depth) + " " + std::to_string(indices.size());
  for (auto i : indices) {
    out += ' ';
    out += std::to_string(i);
  }
  return out;
}

CobasisKey CobasisKey::parse(std::string_view text) {
  CobasisKey key;
  key.depth = next_number(text);
  auto k = next_number(text);
  key.indices.reserve(k);
  for (std::size_t i = 0; i < k; ++i) key.indices.push_back(next_number(text));
  if (text.find_first_not_of(" \t\r") != std::string_view::npos) {
    throw std::invalid_argument("trailing tokens in cobasis key");
  }
  if (!key.well_formed()) throw std::invalid_argument("cobasis indices not strictly increasing");
  return key;
}

}  // namespace polyenum
