#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "polyenum/rational.hpp"

namespace polyenum {

/// Upper bound f(m, d) on the vertices of a d-polytope with m facets
/// (tight for the duals of cyclic polytopes). Requires m > d >= 1.
Integer mcmullen_bound(std::size_t m, std::size_t d);

struct VertexBounds {
  Integer lower;
  Integer upper;
};

/// lower = min{t : m <= f(t, d)}, upper = f(m, d).
VertexBounds vertex_bounds(std::size_t m, std::size_t d);

/// Parallel efficiency t1 / (cores * tn). Throws DomainError on nonpositive input.
double efficiency(double t1, std::size_t cores, double tn);

/// "%.2f" rendering used for efficiency tables.
std::string format_ratio(double value);

}  // namespace polyenum
