#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <set>

#include "oracle.hpp"
#include "polyenum/bounds.hpp"
#include "polyenum/dictionary.hpp"
#include "polyenum/errors.hpp"
#include "polyenum/generators.hpp"

using namespace polyenum;

namespace {

Problem triangle() {
  return parse_problem("triangle\nH-representation\nbegin\n3 3 rational\n0 1 0\n0 0 1\n1 -1 -1\nend\n");
}

std::vector<Rational> point(long x, long y) { return {Rational(x), Rational(y)}; }

// Every dictionary reachable from the root through adjacency, found by a
// breadth-first walk that keeps a visited set.
std::vector<Dictionary> walk(const Dictionary& root) {
  std::vector<Dictionary> out{root};
  std::set<std::vector<VarIndex>> seen{root.cobasis()};
  std::deque<Dictionary> todo{root};
  while (!todo.empty()) {
    Dictionary v = todo.front();
    todo.pop_front();
    for (std::size_t j = 1; j <= v.cols(); ++j) {
      auto w = adjacency(v, j);
      if (!w || !seen.insert(w->cobasis()).second) continue;
      out.push_back(*w);
      todo.push_back(*w);
    }
  }
  return out;
}

std::vector<Problem> small_instances() {
  return {triangle(),      make_cube(3),   make_simplex(3), make_cross(3),
          make_cross(4),   make_klee_minty(4), make_cube(4)};
}

}  // namespace

TEST(InitialDictionary, Cube) {
  Dictionary d = initial_dictionary(make_cube(3));
  EXPECT_EQ(d.basis(), (std::vector<VarIndex>{4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(d.cobasis(), (std::vector<VarIndex>{1, 2, 3}));
  for (std::size_t r = 0; r < d.rows(); ++r) EXPECT_GE(d.entry(r, 0).sign(), 0);
}

TEST(InitialDictionary, PermutahedronLinearityIsEliminated) {
  Dictionary d = initial_dictionary(make_permutahedron(4));
  EXPECT_EQ(d.cols(), 3u);
  EXPECT_EQ(d.model().dimension(), 3u);
  EXPECT_EQ(d.model().slack_vars.size(), 14u);
}

TEST(InitialDictionary, LinearityErrors) {
  EXPECT_THROW(initial_dictionary(parse_problem(
                   "H-representation\nlinearity 2 1 2\nbegin\n2 3 rational\n-1 1 1\n-2 1 1\nend\n")),
               InconsistentLinearity);
  EXPECT_THROW(initial_dictionary(parse_problem(
                   "H-representation\nlinearity 2 1 2\nbegin\n2 3 rational\n-1 1 1\n-2 2 2\nend\n")),
               RankDeficientLinearity);
}

TEST(FindRoot, CubeRootIsUniqueOptimum) {
  Dictionary root = root_dictionary(make_cube(3));
  EXPECT_TRUE(root.is_lex_feasible());
  EXPECT_TRUE(root.is_root());
  EXPECT_EQ(root.depth(), 0u);
  for (std::size_t c = 1; c <= root.cols(); ++c) EXPECT_EQ(root.objective(c), Rational(1));
  for (VarIndex v : root.cobasis()) EXPECT_TRUE(root.model().is_slack(v));
}

TEST(FindRoot, Infeasible) {
  EXPECT_THROW(root_dictionary(parse_problem("H-representation\nbegin\n2 2 rational\n-1 1\n0 -1\nend\n")),
               Infeasible);
}

TEST(FindRoot, TriangleRootAgreesWithSubsetOracle) {
  const Problem p = triangle();
  Dictionary root = root_dictionary(p);
  auto report = oracle::subset_enumeration(p);
  ASSERT_EQ(report.bases.size(), 3u);
  bool found = false;
  for (const auto& b : report.bases) {
    if (b.cobasis == root.cobasis()) {
      found = true;
      EXPECT_EQ(lexmin_vertex(root).coords, b.point);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(root.cobasis(), (std::vector<VarIndex>{3, 4}));
  EXPECT_EQ(lexmin_vertex(root).coords, point(0, 0));
  EXPECT_TRUE(lexmin_vertex(root).is_lexmin);
}

TEST(FindRoot, NonPointedIsRejected) {
  // x1 >= 0 in the plane: a half-plane has no vertex
  EXPECT_THROW(root_dictionary(parse_problem("H-representation\nbegin\n1 3 rational\n0 1 0\nend\n")), NotPointed);
}

TEST(Pivot, TriangleStep) {
  Dictionary root = root_dictionary(triangle());
  Dictionary next = pivot(root, 5, 3);
  EXPECT_EQ(next.cobasis(), (std::vector<VarIndex>{4, 5}));
  EXPECT_EQ(lexmin_vertex(next).coords, point(1, 0));
  auto report = oracle::subset_enumeration(triangle());
  bool found = false;
  for (const auto& b : report.bases) found = found || (b.cobasis == next.cobasis() && b.point == point(1, 0));
  EXPECT_TRUE(found);
}

TEST(Pivot, ZeroElementAndBadIndices) {
  Dictionary root = root_dictionary(triangle());
  // row of x1 does not involve slack 4
  EXPECT_THROW(pivot(root, 1, 4), ZeroPivotElement);
  EXPECT_THROW(pivot(root, 3, 4), std::invalid_argument);
  EXPECT_THROW(pivot(root, 5, 9), std::invalid_argument);
}

TEST(Pivot, Involution) {
  for (const auto& p : small_instances()) {
    for (const auto& d : walk(root_dictionary(p))) {
      for (VarIndex leaving : d.basis()) {
        if (!d.model().is_slack(leaving)) continue;
        for (VarIndex entering : d.cobasis()) {
          if (d.entry(*d.row_of(leaving), *d.col_of(entering) + 1).is_zero()) continue;
          Dictionary there = pivot(d, leaving, entering);
          EXPECT_EQ(pivot(there, entering, leaving), d) << p.name;
        }
      }
    }
  }
}

TEST(LexRatioTest, Examples) {
  Dictionary tri = root_dictionary(triangle());
  EXPECT_EQ(lex_ratio_test(tri, 3), std::optional<VarIndex>(5));

  Dictionary cube = root_dictionary(make_cube(3));
  ASSERT_EQ(cube.cobasis(), (std::vector<VarIndex>{4, 5, 6}));
  for (VarIndex e : cube.cobasis()) EXPECT_EQ(lex_ratio_test(cube, e), std::optional<VarIndex>(e + 3));

  Dictionary ray = root_dictionary(parse_problem("H-representation\nbegin\n1 2 rational\n0 1\nend\n"));
  EXPECT_EQ(lex_ratio_test(ray, ray.cobasis()[0]), std::nullopt);
  EXPECT_THROW(lex_ratio_test(cube, 1), std::invalid_argument);
}

TEST(LexRatioTest, UniqueMinimizerUnderDegeneracy) {
  // lex_ratio_row asserts a single minimizer; the walk exercises every
  // column of every lex-feasible basis of degenerate instances.
  for (const auto& p : {make_cross(3), make_cross(4)}) {
    for (const auto& d : walk(root_dictionary(p))) {
      for (std::size_t c = 0; c < d.cols(); ++c) EXPECT_NO_THROW(d.lex_ratio_row(c));
    }
  }
}

TEST(LocalSearch, TriangleAndRoot) {
  Dictionary root = root_dictionary(triangle());
  Dictionary v = pivot(root, 5, 3);
  v.set_depth(1);
  LocalStep step = local_search(v);
  EXPECT_EQ(step.parent.cobasis(), root.cobasis());
  auto back = adjacency(step.parent, step.j);
  ASSERT_TRUE(back);
  EXPECT_EQ(back->cobasis(), v.cobasis());
  EXPECT_THROW(local_search(root), AtRoot);
}

TEST(Adjacency, NeighbourCounts) {
  auto count = [](const Dictionary& d) {
    std::size_t n = 0;
    for (std::size_t j = 1; j <= d.cols(); ++j) n += adjacency(d, j).has_value();
    return n;
  };
  Dictionary tri = root_dictionary(triangle());
  EXPECT_EQ(count(tri), 2u);
  std::set<std::vector<Rational>> pts;
  for (std::size_t j = 1; j <= 2; ++j) pts.insert(lexmin_vertex(*adjacency(tri, j)).coords);
  EXPECT_EQ(pts, (std::set<std::vector<Rational>>{point(1, 0), point(0, 1)}));
  EXPECT_EQ(count(root_dictionary(make_cube(3))), 3u);
  EXPECT_THROW(adjacency(tri, 3), std::out_of_range);
  EXPECT_THROW(adjacency(tri, 0), std::out_of_range);
}

TEST(Adjacency, LocalSearchInvertsAdjacency) {
  for (const auto& p : small_instances()) {
    for (const auto& v : walk(root_dictionary(p))) {
      EXPECT_TRUE(v.is_lex_feasible());
      if (v.is_root()) continue;
      LocalStep step = local_search(v);
      EXPECT_TRUE(step.parent.is_lex_feasible());
      auto w = adjacency(step.parent, step.j);
      ASSERT_TRUE(w);
      EXPECT_EQ(w->cobasis(), v.cobasis()) << p.name;
    }
  }
}

TEST(Adjacency, ReverseShortcutMatchesFullPivot) {
  for (const auto& p : small_instances()) {
    for (const auto& v : walk(root_dictionary(p))) {
      for (std::size_t j = 1; j <= v.cols(); ++j) {
        auto row = v.lex_ratio_row(j - 1);
        auto w = adjacency(v, j);
        ASSERT_EQ(row.has_value(), w.has_value());
        if (!w) continue;
        bool full = false;
        if (!w->is_root()) {
          LocalStep s = local_search(*w);
          full = s.parent.cobasis() == v.cobasis() && s.j == j;
        }
        EXPECT_EQ(v.is_reverse_pivot(*row, j - 1), full) << p.name << " j=" << j;
      }
    }
  }
}

TEST(Adjacency, LocalSearchReachesRootWithinBasisCount) {
  for (const auto& p : small_instances()) {
    auto all = walk(root_dictionary(p));
    for (const auto& v : all) {
      Dictionary cur = v;
      std::size_t steps = 0;
      while (!cur.is_root()) {
        cur = local_search(cur).parent;
        ASSERT_LE(++steps, all.size()) << p.name;
      }
    }
  }
}

TEST(RestartFrom, RootAndRoundTrip) {
  Dictionary root = root_dictionary(make_cube(3));
  EXPECT_EQ(restart_from(root, root.key()), root);
  for (const auto& p : {make_cube(3), make_cross(4), make_permutahedron(4)}) {
    Dictionary r = root_dictionary(p);
    for (auto v : walk(r)) {
      v.set_depth(5);
      Dictionary again = restart_from(r, v.key());
      EXPECT_EQ(again, v) << p.name;
      EXPECT_EQ(again.key(), v.key());
    }
  }
}

TEST(RestartFrom, InvalidKeys) {
  Dictionary root = root_dictionary(make_cube(3));
  EXPECT_THROW(restart_from(root, CobasisKey{0, {1, 1, 2}}), InvalidCobasis);
  EXPECT_THROW(restart_from(root, CobasisKey{0, {4, 5}}), InvalidCobasis);
  EXPECT_THROW(restart_from(root, CobasisKey{0, {1, 4, 5}}), InvalidCobasis);
  // x1 >= 0 and 1 - x1 >= 0 cannot both be tight
  EXPECT_THROW(restart_from(root, CobasisKey{0, {4, 5, 7}}), InvalidCobasis);
  EXPECT_THROW(restart_from(root, CobasisKey{0, {4, 5, 99}}), InvalidCobasis);
}

TEST(RestartFrom, RejectsBasesThatAreNotLexFeasible) {
  // cross-polytope bases that are feasible but not lex-feasible
  const Problem p = make_cross(3);
  Dictionary root = root_dictionary(p);
  auto report = oracle::subset_enumeration(p);
  std::set<std::vector<VarIndex>> lex;
  for (const auto& b : report.bases) lex.insert(b.cobasis);
  std::size_t rejected = 0;
  const std::size_t d = 3;
  for (VarIndex a = d + 1; a <= d + p.m; ++a) {
    for (VarIndex b = a + 1; b <= d + p.m; ++b) {
      for (VarIndex c = b + 1; c <= d + p.m; ++c) {
        CobasisKey key{0, {a, b, c}};
        if (lex.count(key.indices)) {
          EXPECT_EQ(restart_from(root, key).cobasis(), key.indices);
        } else {
          EXPECT_THROW(restart_from(root, key), InvalidCobasis);
          ++rejected;
        }
      }
    }
  }
  EXPECT_GT(rejected, 0u);
}

TEST(Lexmin, NonDegenerateBasesAreAllLexmin) {
  for (const auto& p : {make_cube(4), make_klee_minty(4), make_simplex(4)}) {
    for (const auto& v : walk(root_dictionary(p))) EXPECT_TRUE(lexmin_vertex(v).is_lexmin) << p.name;
  }
}

TEST(Lexmin, CrossPolytopeVertexHasOneLexminBasis) {
  const Problem p = make_cross(4);
  Dictionary root = root_dictionary(p);
  auto report = oracle::subset_enumeration(p);
  const std::vector<Rational> e1 = {Rational(1), Rational(0), Rational(0), Rational(0)};
  std::size_t bases = 0, lexmin = 0;
  for (const auto& b : report.bases) {
    if (b.point != e1) continue;
    ++bases;
    auto r = lexmin_vertex(restart_from(root, CobasisKey{0, b.cobasis}));
    EXPECT_EQ(r.coords, e1);
    lexmin += r.is_lexmin;
  }
  EXPECT_GT(bases, 1u);
  EXPECT_EQ(lexmin, 1u);
}

TEST(Lexmin, ExactlyOneLexminBasisPerVertex) {
  for (const auto& p : {make_cube(3), make_cross(3), make_cross(4), make_klee_minty(4), triangle()}) {
    auto report = oracle::subset_enumeration(p);
    auto all = walk(root_dictionary(p));
    EXPECT_EQ(all.size(), report.bases.size()) << p.name;
    std::map<std::vector<Rational>, std::size_t> per_vertex;
    for (const auto& v : all) {
      auto r = lexmin_vertex(v);
      if (r.is_lexmin) ++per_vertex[r.coords];
    }
    EXPECT_EQ(per_vertex.size(), report.vertices.size()) << p.name;
    for (const auto& [pt, n] : per_vertex) {
      EXPECT_EQ(n, 1u);
      EXPECT_TRUE(report.vertices.count(pt));
    }
  }
}

TEST(Lexmin, BasisCountWithinUpperBound) {
  for (const auto& p : small_instances()) {
    const std::size_t d = p.n - 1;
    if (p.m <= d) continue;
    const auto bases = walk(root_dictionary(p)).size();
    EXPECT_LE(Integer(static_cast<long>(bases)), mcmullen_bound(p.m, d)) << p.name;
  }
}

TEST(Rays, DirectionAndPrimitiveScaling) {
  // the cone x >= 0, y >= 0 has rays (1,0) and (0,1)
  Dictionary root = root_dictionary(parse_problem("H-representation\nbegin\n2 3 rational\n0 1 0\n0 0 1\nend\n"));
  std::set<std::vector<Rational>> rays;
  for (std::size_t c = 0; c < root.cols(); ++c) {
    ASSERT_FALSE(root.lex_ratio_row(c));
    if (is_lexmin_ray(root, c)) rays.insert(ray_direction(root, c));
  }
  EXPECT_EQ(rays, (std::set<std::vector<Rational>>{point(1, 0), point(0, 1)}));
  EXPECT_EQ(primitive_integer({Rational::parse("2/3"), Rational::parse("-4/9")}), point(3, -2));
}
