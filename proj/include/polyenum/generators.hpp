#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "polyenum/polyio.hpp"

namespace polyenum {

enum class Family { cube, cross, simplex, cyclic, kleeminty, permutahedron };

/// Throws UsageError for unknown names.
Family parse_family(std::string_view name);
std::string_view family_name(Family f);

Problem make_cube(std::size_t d);
Problem make_cross(std::size_t d);
Problem make_simplex(std::size_t d);
/// Moment-curve points (t, t^2, ..., t^d), t = 1..m, as a V-representation.
Problem make_cyclic(std::size_t m, std::size_t d);
/// Chvatal's Klee-Minty cube: 100^{i-1} - x_i - 2 sum_{j<i} 10^{i-j} x_j >= 0, x >= 0.
Problem make_klee_minty(std::size_t d);
/// 2^p - 2 subset inequalities plus the sum equation as a linearity.
Problem make_permutahedron(std::size_t p);

/// Builds a family instance from its integer parameters (cyclic takes m d,
/// the others one size). Throws DomainError on out-of-range parameters.
Problem generate(Family f, const std::vector<std::size_t>& params);

}  // namespace polyenum
