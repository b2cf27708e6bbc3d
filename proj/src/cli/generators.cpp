#include "polyenum/generators.hpp"

#include <array>

#include "polyenum/errors.hpp"

namespace polyenum {

namespace {

constexpr std::array<std::string_view, 6> kFamilyNames = {"cube",   "cross",     "simplex",
                                                          "cyclic", "kleeminty", "permutahedron"};

Problem h_problem(std::string name, std::size_t d, std::vector<std::vector<Rational>> rows) {
  Problem p;
  p.name = std::move(name);
  p.rep = Representation::H;
  p.m = rows.size();
  p.n = d + 1;
  p.rows = std::move(rows);
  return p;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

Family parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyNames[i] == name) return static_cast<Family>(i);
  }
  throw UsageError("unknown family '" + std::string(name) + "'");
}

std::string_view family_name(Family f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

Problem make_cube(std::size_t d) {
  require(d >= 1 && d <= 30, "cube dimension must be in 1..30");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> row(d + 1);
    row[i + 1] = 1;
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> row(d + 1);
    row[0] = 1;
    row[i + 1] = -1;
    rows.push_back(std::move(row));
  }
  return h_problem("cube" + std::to_string(d), d, std::move(rows));
}

Problem make_cross(std::size_t d) {
  require(d >= 1 && d <= 16, "cross-polytope dimension must be in 1..16");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<Rational> row(d + 1);
    row[0] = 1;
    for (std::size_t i = 0; i < d; ++i) row[i + 1] = (mask >> i) & 1 ? 1 : -1;
    rows.push_back(std::move(row));
  }
  return h_problem("cross" + std::to_string(d), d, std::move(rows));
}

Problem make_simplex(std::size_t d) {
  require(d >= 1 && d <= 200, "simplex dimension must be in 1..200");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> row(d + 1);
    row[i + 1] = 1;
    rows.push_back(std::move(row));
  }
  std::vector<Rational> last(d + 1, Rational(-1));
  last[0] = 1;
  rows.push_back(std::move(last));
  return h_problem("simplex" + std::to_string(d), d, std::move(rows));
}

Problem make_cyclic(std::size_t m, std::size_t d) {
  require(d >= 2 && m > d && m <= 1000, "cyclic polytope needs 2 <= d < m <= 1000");
  Problem p;
  p.name = "cyclic" + std::to_string(m) + "_" + std::to_string(d);
  p.rep = Representation::V;
  p.m = m;
  p.n = d + 1;
  for (std::size_t t = 1; t <= m; ++t) {
    std::vector<Rational> row;
    row.reserve(d + 1);
    row.emplace_back(1);
    Integer power(1);
    for (std::size_t j = 1; j <= d; ++j) {
      power = power * Integer(static_cast<long>(t));
      row.emplace_back(power);
    }
    p.rows.push_back(std::move(row));
  }
  return p;
}

Problem make_klee_minty(std::size_t d) {
  require(d >= 1 && d <= 60, "Klee-Minty dimension must be in 1..60");
  std::vector<std::vector<Rational>> rows;
  auto power = [](long base, std::size_t e) {
    Integer r(1);
    for (std::size_t k = 0; k < e; ++k) r = r * Integer(base);
    return r;
  };
  for (std::size_t i = 1; i <= d; ++i) {
    std::vector<Rational> row(d + 1);
    row[0] = power(100, i - 1);
    for (std::size_t j = 1; j < i; ++j) row[j] = Rational(Integer(-2) * power(10, i - j));
    row[i] = -1;
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 1; i <= d; ++i) {
    std::vector<Rational> row(d + 1);
    row[i] = 1;
    rows.push_back(std::move(row));
  }
  return h_problem("km" + std::to_string(d), d, std::move(rows));
}

Problem make_permutahedron(std::size_t p) {
  require(p >= 2 && p <= 12, "permutahedron size must be in 2..12");
  std::vector<std::vector<Rational>> rows;
  const std::size_t full = (std::size_t{1} << p) - 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    std::vector<Rational> row(p + 1);
    long size = 0;
    for (std::size_t i = 0; i < p; ++i) {
      if ((mask >> i) & 1) {
        row[i + 1] = 1;
        ++size;
      }
    }
    row[0] = -(size * (size + 1) / 2);
    rows.push_back(std::move(row));
  }
  std::vector<Rational> eq(p + 1, Rational(1));
  eq[0] = -static_cast<long>(p * (p + 1) / 2);
  rows.push_back(std::move(eq));
  auto problem = h_problem("perm" + std::to_string(p), p, std::move(rows));
  problem.linearity = {problem.m};
  return problem;
}

Problem generate(Family f, const std::vector<std::size_t>& params) {
  const std::size_t want = f == Family::cyclic ? 2 : 1;
  if (params.size() != want) {
    throw DomainError(std::string(family_name(f)) + " takes " + std::to_string(want) + " parameter(s)");
  }
  switch (f) {
    case Family::cube: return make_cube(params[0]);
    case Family::cross: return make_cross(params[0]);
    case Family::simplex: return make_simplex(params[0]);
    case Family::cyclic: return make_cyclic(params[0], params[1]);
    case Family::kleeminty: return make_klee_minty(params[0]);
    case Family::permutahedron: return make_permutahedron(params[0]);
  }
  throw DomainError("unknown family");
}

}  // namespace polyenum
