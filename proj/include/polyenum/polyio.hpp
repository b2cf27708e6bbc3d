#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "polyenum/cobasis_key.hpp"
#include "polyenum/rational.hpp"

namespace polyenum {

enum class Representation { H, V };

std::string_view representation_keyword(Representation rep);

/// Enumeration input: an m x n matrix whose row i is (b_i, a_i1, ..., a_id),
/// read as b_i + a_i.x >= 0 (H) or as a vertex/ray with leading 1/0 (V).
struct Problem {
  std::string name;
  Representation rep = Representation::H;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> linearity;  // 1-based, sorted
  std::vector<std::string> trailing;   // ignored lines after `end`

  std::size_t dimension() const { return n - 1; }
  bool is_linearity(std::size_t row) const;  // 1-based

  friend bool operator==(const Problem& a, const Problem& b) {
    return a.name == b.name && a.rep == b.rep && a.m == b.m && a.n == b.n && a.rows == b.rows &&
           a.linearity == b.linearity;
  }
};

Problem parse_problem(std::istream& in);
Problem parse_problem(std::string_view text);

/// Renders a Problem in the input grammar; parse_problem(write_problem(p)) == p.
std::string write_problem(const Problem& p);

enum class RecordKind { vertex, ray, facet, cobasis };

/// One node of an enumeration as it reaches the output stream.
///
/// vertex: coords = x (d values, printed after a leading 1)
/// ray:    coords = direction (d values, printed after a leading 0)
/// facet:  coords = (b, a) of the inequality b + a.x >= 0
/// cobasis: a basis that carries no geometric output (non-lexmin)
struct OutputRecord {
  RecordKind kind = RecordKind::cobasis;
  std::vector<Rational> coords;
  CobasisKey cobasis;
  bool unexplored = false;
  std::size_t depth = 0;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

enum class RecordMode { plain, flagged };

inline constexpr std::string_view kUnexploredMarker = "*unexplored";

/// Opening lines of an output stream ("***** n rational" since the row
/// count is not known up front). Records follow, then "end".
std::string write_output_header(std::string_view name, Representation output, std::size_t columns);

/// Formats one record as an output line without trailing newline. Returns an
/// empty string for records that print nothing in the given mode.
std::string write_record(const OutputRecord& rec, RecordMode mode);

struct CountingStats {
  std::size_t bases = 0;
  std::size_t vertices = 0;  // vertices, or facets for V-input
  std::size_t rays = 0;
  std::size_t jobs_done = 0;
  std::size_t max_depth_seen = 0;

  CountingStats& operator+=(const CountingStats& o);
  friend bool operator==(const CountingStats&, const CountingStats&) = default;
};

/// Footer comment lines ("*Totals: ..."); `output` names what was enumerated.
std::string write_summary(const CountingStats& stats, Representation output = Representation::V);

}  // namespace polyenum
