#include <gtest/gtest.h>

#include <sstream>

#include "polyenum/bounds.hpp"
#include "polyenum/cli.hpp"
#include "polyenum/errors.hpp"
#include "polyenum/generators.hpp"
#include "polyenum/reverse_search.hpp"

using namespace polyenum;

namespace {

using i128 = __int128;

std::string str(i128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), char('0' + int(v % 10)));
    v /= 10;
  }
  return s;
}

// Pascal triangle, no shared code with the library binomial
i128 choose(std::size_t n, std::size_t k) {
  static std::vector<std::vector<i128>> rows;
  while (rows.size() <= n) {
    const std::size_t r = rows.size();
    std::vector<i128> row(r + 1, 1);
    for (std::size_t j = 1; j < r; ++j) row[j] = rows[r - 1][j - 1] + rows[r - 1][j];
    rows.push_back(std::move(row));
  }
  return k > n ? 0 : rows[n][k];
}

// vertices of the dual cyclic polytope, by the h-vector closed forms
i128 ubt(std::size_t m, std::size_t d) {
  const std::size_t k = d / 2;
  if (d % 2 == 0) return i128(m) * choose(m - k, k) / i128(m - k);
  return 2 * choose(m - k - 1, k);
}

CountingStats enumerate(const Problem& p) {
  std::ostringstream out;
  return run_sequential(p, out);
}

}  // namespace

TEST(Cli, Defaults) {
  const RunConfig cfg = parse_cli({"cube.ine"});
  EXPECT_EQ(cfg.mode, RunMode::parallel);
  EXPECT_EQ(cfg.input, "cube.ine");
  EXPECT_EQ(cfg.init_depth, 2u);
  EXPECT_EQ(cfg.max_cobases, 50u);
  EXPECT_EQ(cfg.max_depth, 2u);
  EXPECT_EQ(cfg.lmin, 3u);
  EXPECT_EQ(cfg.lmax, 3u);
  EXPECT_EQ(cfg.scale, 100u);
  EXPECT_GE(cfg.workers, 1u);
  EXPECT_FALSE(cfg.histogram);
  EXPECT_FALSE(cfg.checkpoint);
  EXPECT_EQ(parse_cli({}).input, "-");
  EXPECT_EQ(parse_cli({"run", "x.ine"}).input, "x.ine");
}

TEST(Cli, Flags) {
  const RunConfig cfg = parse_cli({"-np", "6", "-id", "3", "-maxc", "7", "-maxd", "4", "-lmin", "2", "-lmax", "5",
                                   "-scale", "9", "-hist", "h.txt", "-checkp", "c.chk", "-stopafter", "100",
                                   "-time", "1.5", "-sockets", "-o", "out.ext", "in.ine"});
  EXPECT_EQ(cfg.workers, 6u);
  EXPECT_EQ(cfg.init_depth, 3u);
  EXPECT_EQ(cfg.max_cobases, 7u);
  EXPECT_EQ(cfg.max_depth, 4u);
  EXPECT_EQ(cfg.lmin, 2u);
  EXPECT_EQ(cfg.lmax, 5u);
  EXPECT_EQ(cfg.scale, 9u);
  EXPECT_EQ(cfg.histogram, "h.txt");
  EXPECT_EQ(cfg.checkpoint, "c.chk");
  EXPECT_EQ(cfg.stop_after, 100u);
  EXPECT_EQ(cfg.time_limit, 1.5);
  EXPECT_EQ(cfg.binding, Binding::sockets);
  EXPECT_EQ(cfg.output, "out.ext");
  const MasterConfig m = master_config(cfg);
  EXPECT_EQ(m.workers, 6u);
  EXPECT_EQ(m.max_cobases, 7u);
  EXPECT_EQ(m.scale, 9u);
  EXPECT_EQ(m.stop_after_bases, 100u);
}

TEST(Cli, Sequential) {
  EXPECT_EQ(parse_cli({"-seq", "cube.ine"}).mode, RunMode::sequential);
  EXPECT_THROW(parse_cli({"-seq", "-np", "2", "f.ine"}), UsageError);
  EXPECT_THROW(parse_cli({"-seq", "-restart", "c.chk", "f.ine"}), UsageError);
  EXPECT_THROW(parse_cli({"-seq", "-hist", "h", "f.ine"}), UsageError);
  EXPECT_THROW(parse_cli({"-seq", "-checkp", "c", "f.ine"}), UsageError);
}

TEST(Cli, BadArguments) {
  EXPECT_THROW(parse_cli({"-lmin", "0", "f.ine"}), UsageError);
  EXPECT_THROW(parse_cli({"-maxc", "-3"}), UsageError);
  EXPECT_THROW(parse_cli({"-np", "two"}), UsageError);
  EXPECT_THROW(parse_cli({"-np"}), UsageError);
  EXPECT_THROW(parse_cli({"-time", "0"}), UsageError);
  EXPECT_THROW(parse_cli({"-frobnicate", "f.ine"}), UsageError);
  EXPECT_THROW(parse_cli({"a.ine", "b.ine"}), UsageError);
  EXPECT_FALSE(usage().empty());
}

TEST(Cli, DefaultWorkers) {
  EXPECT_EQ(default_workers(1), 1u);
  EXPECT_EQ(default_workers(2), 1u);
  EXPECT_EQ(default_workers(3), 1u);
  EXPECT_EQ(default_workers(4), 2u);
  EXPECT_EQ(default_workers(64), 62u);
}

TEST(Bounds, PublishedValues) {
  EXPECT_EQ(mcmullen_bound(40, 20).to_string(), "40060020");
  EXPECT_EQ(mcmullen_bound(30, 15).to_string(), "341088");
  EXPECT_EQ(mcmullen_bound(3, 2).to_string(), "3");
  EXPECT_EQ(mcmullen_bound(12, 6).to_string(), "112");
}

TEST(Bounds, MatchesClosedForms) {
  for (std::size_t m = 2; m <= 25; ++m) {
    for (std::size_t d = 1; d < m; ++d) {
      EXPECT_EQ(mcmullen_bound(m, d).to_string(), str(ubt(m, d))) << m << " " << d;
    }
  }
}

TEST(Bounds, VertexBounds) {
  auto b = vertex_bounds(40, 20);
  EXPECT_EQ(b.lower.to_string(), "22");
  EXPECT_EQ(b.upper.to_string(), "40060020");
  b = vertex_bounds(4, 3);
  EXPECT_EQ(b.lower.to_string(), "4");
  EXPECT_EQ(b.upper.to_string(), "4");
  for (auto [m, d] : {std::pair<std::size_t, std::size_t>{12, 6}, {20, 5}, {25, 3}, {9, 8}}) {
    b = vertex_bounds(m, d);
    EXPECT_EQ(b.upper.to_string(), str(ubt(m, d)));
    const std::size_t t = std::stoul(b.lower.to_string());
    EXPECT_LE(i128(m), ubt(t, d));
    if (t - 1 > d) EXPECT_GT(i128(m), ubt(t - 1, d));
  }
  EXPECT_EQ(vertex_bounds(12, 6).upper.to_string(), "112");
}

TEST(Bounds, DomainErrors) {
  EXPECT_THROW(mcmullen_bound(3, 3), DomainError);
  EXPECT_THROW(mcmullen_bound(2, 5), DomainError);
  EXPECT_THROW(mcmullen_bound(5, 0), DomainError);
  EXPECT_THROW(vertex_bounds(4, 4), DomainError);
  EXPECT_THROW(efficiency(0, 4, 1), DomainError);
  EXPECT_THROW(efficiency(1, 0, 1), DomainError);
  EXPECT_THROW(efficiency(1, 4, -2), DomainError);
}

TEST(Bounds, Efficiency) {
  EXPECT_EQ(format_ratio(efficiency(519, 4, 293)), "0.44");
  EXPECT_EQ(format_ratio(efficiency(10002, 8, 2023)), "0.62");
  EXPECT_EQ(format_ratio(efficiency(17.5, 1, 17.5)), "1.00");
}

TEST(Generators, Examples) {
  const Problem cube = generate(Family::cube, {3});
  EXPECT_EQ(cube.m, 6u);
  EXPECT_EQ(cube.n, 4u);
  EXPECT_EQ(enumerate(cube).vertices, 8u);

  const Problem perm = generate(Family::permutahedron, {4});
  EXPECT_EQ(perm.m, 15u);
  EXPECT_EQ(perm.linearity.size(), 1u);
  EXPECT_EQ(enumerate(perm).vertices, 24u);

  const Problem cyc = generate(Family::cyclic, {12, 6});
  EXPECT_EQ(cyc.rep, Representation::V);
  EXPECT_EQ(cyc.m, 12u);
  EXPECT_EQ(enumerate(cyc).vertices, 112u);
  EXPECT_EQ(cyc.rows[2][3], Rational(27));

  const Problem km = generate(Family::kleeminty, {3});
  EXPECT_EQ(km.m, 6u);
  EXPECT_EQ(enumerate(km).vertices, 8u);
  EXPECT_EQ(enumerate(generate(Family::simplex, {5})).vertices, 6u);
  EXPECT_EQ(enumerate(generate(Family::cross, {3})).vertices, 6u);
}

TEST(Generators, Errors) {
  EXPECT_THROW(generate(Family::cube, {0}), DomainError);
  EXPECT_THROW(generate(Family::cyclic, {4, 4}), DomainError);
  EXPECT_THROW(generate(Family::cyclic, {6}), DomainError);
  EXPECT_THROW(generate(Family::permutahedron, {1}), DomainError);
  EXPECT_THROW(parse_family("dodecahedron"), UsageError);
  EXPECT_EQ(parse_family("kleeminty"), Family::kleeminty);
}

TEST(Generators, EveryFamilyRoundTrips) {
  const std::vector<std::pair<Family, std::vector<std::size_t>>> cases = {
      {Family::cube, {4}},   {Family::cross, {4}},          {Family::simplex, {4}},
      {Family::cyclic, {8, 3}}, {Family::kleeminty, {4}}, {Family::permutahedron, {3}},
  };
  for (const auto& [f, params] : cases) {
    const Problem p = generate(f, params);
    const Problem q = parse_problem(write_problem(p));
    EXPECT_EQ(q.m, p.m) << family_name(f);
    EXPECT_EQ(q.rows, p.rows) << family_name(f);
    EXPECT_EQ(q.linearity, p.linearity) << family_name(f);
    EXPECT_GT(enumerate(q).vertices, 0u) << family_name(f);
  }
}
