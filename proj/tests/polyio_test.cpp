#include <gtest/gtest.h>

#include "polyenum/errors.hpp"
#include "polyenum/generators.hpp"
#include "polyenum/polyio.hpp"

using namespace polyenum;

namespace {

const char* kCube = R"(cube
H-representation
begin
6 4 rational
0 1 0 0
0 0 1 0
0 0 0 1
1 -1 0 0
1 0 -1 0
1 0 0 -1
end
)";

Rational q(long n, long d) { return Rational::normalize(Integer(n), Integer(d)); }

}  // namespace

TEST(ParseProblem, Cube) {
  Problem p = parse_problem(kCube);
  EXPECT_EQ(p.name, "cube");
  EXPECT_EQ(p.rep, Representation::H);
  EXPECT_EQ(p.m, 6u);
  EXPECT_EQ(p.n, 4u);
  EXPECT_EQ(p.dimension(), 3u);
  EXPECT_EQ(p.rows[3][0], Rational(1));
  EXPECT_EQ(p.rows[3][1], Rational(-1));
  EXPECT_TRUE(p.linearity.empty());
}

TEST(ParseProblem, RowCountMismatch) {
  const char* text = "H-representation\nbegin\n4 3 rational\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n2 2 2\nend\n";
  try {
    parse_problem(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row count"), std::string::npos);
  }
}

TEST(ParseProblem, NonNumericTokenReportsLine) {
  const char* text = "H-representation\nbegin\n2 2 rational\n1 0\n1 x\nend\n";
  try {
    parse_problem(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(ParseProblem, BadDimensions) {
  EXPECT_THROW(parse_problem("H-representation\nbegin\n0 3 rational\nend\n"), ParseError);
  EXPECT_THROW(parse_problem("H-representation\nbegin\n1 1 rational\n1\nend\n"), ParseError);
  EXPECT_THROW(parse_problem("H-representation\nbegin\n2 -3 rational\nend\n"), ParseError);
  EXPECT_THROW(parse_problem("H-representation\nbegin\n1 2\n1 0\nend\n"), ParseError);
  EXPECT_THROW(parse_problem("H-representation\n1 2 rational\n1 0\nend\n"), UnsupportedOption);
  EXPECT_THROW(parse_problem("H-representation\n"), ParseError);
  EXPECT_THROW(parse_problem("H-representation\nbegin\n1 2 rational\n1 0\n"), ParseError);
}

TEST(ParseProblem, Linearity) {
  Problem p = parse_problem(write_problem(make_permutahedron(4)));
  ASSERT_EQ(p.m, 15u);
  EXPECT_EQ(p.linearity, std::vector<std::size_t>{15});
  EXPECT_TRUE(p.is_linearity(15));
  EXPECT_FALSE(p.is_linearity(14));
  EXPECT_THROW(parse_problem("H-representation\nlinearity 1 3\nbegin\n2 2 rational\n1 0\n0 1\nend\n"), ParseError);
  EXPECT_THROW(parse_problem("H-representation\nlinearity 2 1\nbegin\n2 2 rational\n1 0\n0 1\nend\n"), ParseError);
}

TEST(ParseProblem, RationalEntriesAndComments) {
  Problem p = parse_problem("* comment\nV-representation\nbegin\n2 3 rational\n1 1/2 -3/4\n* inside\n0 1 0\nend\n* tail\n");
  EXPECT_EQ(p.rep, Representation::V);
  EXPECT_EQ(p.rows[0][1], q(1, 2));
  EXPECT_EQ(p.rows[0][2], q(-3, 4));
  EXPECT_EQ(p.trailing, std::vector<std::string>{"* tail"});
}

TEST(ParseProblem, VRowsStartWithZeroOrOne) {
  EXPECT_THROW(parse_problem("V-representation\nbegin\n1 3 rational\n2 1 1\nend\n"), ParseError);
}

TEST(ParseProblem, UnsupportedOptions) {
  EXPECT_THROW(parse_problem("H-representation\nbegin\n1 2 integer\n1 0\nend\n"), UnsupportedOption);
  EXPECT_THROW(parse_problem("H-representation\nbegin\n1 2 rational\n1 0\nend\nvolume\n"), UnsupportedOption);
  EXPECT_THROW(parse_problem("H-representation\nbegin\n1 2 rational\n1 0\nend\nestimates 3\n"), UnsupportedOption);
  EXPECT_THROW(parse_problem("name\nH-representation\nnonsense\nbegin\n1 2 rational\n1 0\nend\n"), UnsupportedOption);
  Problem p = parse_problem("H-representation\nbegin\n1 2 rational\n1 0\nend\nmy_note 1\n");
  EXPECT_EQ(p.trailing, std::vector<std::string>{"my_note 1"});
}

TEST(ParseProblem, UnknownRowCount) {
  Problem p = parse_problem("V-representation\nbegin\n***** 3 rational\n1 0 0\n1 1 0\n1 0 1\nend\n");
  EXPECT_EQ(p.m, 3u);
  EXPECT_THROW(parse_problem("V-representation\nbegin\n***** 3 rational\n1 0 0\n1 1\nend\n"), ParseError);
}

TEST(ParseProblem, RoundTripsEveryGenerator) {
  std::vector<Problem> all = {make_cube(4),         make_cross(3),       make_simplex(5),
                              make_cyclic(9, 4),    make_klee_minty(5), make_permutahedron(4)};
  for (const auto& g : all) {
    EXPECT_EQ(parse_problem(write_problem(g)), g) << g.name;
  }
}

TEST(WriteRecord, Formats) {
  OutputRecord v;
  v.kind = RecordKind::vertex;
  v.coords = {Rational(0), Rational(0), Rational(1)};
  EXPECT_EQ(write_record(v, RecordMode::plain), " 1 0 0 1");

  OutputRecord u;
  u.kind = RecordKind::vertex;
  u.coords = {q(1, 2), q(1, 3)};
  u.unexplored = true;
  EXPECT_EQ(write_record(u, RecordMode::flagged), " 1 1/2 1/3 *unexplored");
  EXPECT_EQ(write_record(u, RecordMode::plain), " 1 1/2 1/3");

  OutputRecord r;
  r.kind = RecordKind::ray;
  r.coords = {Rational(1), Rational(0)};
  EXPECT_EQ(write_record(r, RecordMode::plain), " 0 1 0");

  OutputRecord f;
  f.kind = RecordKind::facet;
  f.coords = {Rational(1), Rational(-1), Rational(0)};
  EXPECT_EQ(write_record(f, RecordMode::plain), " 1 -1 0");

  OutputRecord c;
  c.cobasis = CobasisKey{3, {4, 6}};
  EXPECT_EQ(write_record(c, RecordMode::plain), "");
  c.unexplored = true;
  EXPECT_EQ(write_record(c, RecordMode::flagged), "*cobasis 3 2 4 6 *unexplored");
}

TEST(WriteRecord, DistinctRecordsGiveDistinctLines) {
  OutputRecord a, b;
  a.kind = b.kind = RecordKind::vertex;
  a.coords = {Rational(1), Rational(12)};
  b.coords = {Rational(11), Rational(2)};
  EXPECT_NE(write_record(a, RecordMode::plain), write_record(b, RecordMode::plain));
  b.kind = RecordKind::ray;
  b.coords = a.coords;
  EXPECT_NE(write_record(a, RecordMode::plain), write_record(b, RecordMode::plain));
}

TEST(WriteSummary, Footer) {
  CountingStats cube{8, 8, 0, 1, 3};
  EXPECT_EQ(write_summary(cube).substr(0, 35), "*Totals: bases=8 vertices=8 rays=0\n");
  CountingStats perm5{120, 120, 0, 1, 0};
  EXPECT_NE(write_summary(perm5).find("bases=120 vertices=120 rays=0"), std::string::npos);
  const std::string zero = write_summary(CountingStats{});
  EXPECT_NE(zero.find("bases=0 vertices=0 rays=0"), std::string::npos);
  for (std::size_t pos = 0; pos < zero.size(); pos = zero.find('\n', pos) + 1) EXPECT_EQ(zero[pos], '*');
  EXPECT_NE(write_summary(cube, Representation::H).find("facets=8"), std::string::npos);
}

TEST(WriteOutput, StreamReparses) {
  std::string text = write_output_header("out", Representation::V, 3);
  OutputRecord v;
  v.kind = RecordKind::vertex;
  for (int i = 0; i < 3; ++i) {
    v.coords = {Rational(i), q(1, i + 1)};
    text += write_record(v, RecordMode::plain) + "\n";
  }
  text += "end\n" + write_summary(CountingStats{3, 3, 0, 1, 0});
  Problem p = parse_problem(text);
  EXPECT_EQ(p.rep, Representation::V);
  EXPECT_EQ(p.m, 3u);
  EXPECT_EQ(p.n, 3u);
  EXPECT_EQ(p.rows[2][2], q(1, 3));
}

TEST(CountingStats, Accumulate) {
  CountingStats a{1, 2, 3, 4, 5};
  a += CountingStats{10, 20, 30, 40, 2};
  EXPECT_EQ(a, (CountingStats{11, 22, 33, 44, 5}));
}
