#include "polyenum/polyio.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "polyenum/errors.hpp"

namespace polyenum {

namespace {

// lrs options whose semantics this engine does not implement. They are
// rejected rather than silently ignored.
constexpr std::array<std::string_view, 30> kSemanticOptions = {
    "allbases",  "bound",      "cache",        "debug",     "digits",     "dualperturb",
    "eliminate", "estimates",  "extract",      "geometric", "hull",       "incidence",
    "integer",   "linearity",  "lponly",       "maxcobases", "maxdepth",  "maximize",
    "maxincidence", "mindepth", "minimize",    "nonnegative", "printcobasis", "printslack",
    "project",   "redund",     "restart",      "startingcobasis", "truncate", "volume"};

struct Token {
  std::string text;
  std::size_t line;
};

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  try {
    std::size_t pos = 0;
    if (tok.empty() || tok[0] == '-' || tok[0] == '+') throw std::invalid_argument(tok);
    auto v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  }
}

Rational parse_number(const Token& t) {
  try {
    return Rational::parse(t.text);
  } catch (const ZeroDenominator&) {
    throw ParseError(t.line, "zero denominator in '" + t.text + "'");
  } catch (const std::invalid_argument&) {
    throw ParseError(t.line, "non-numeric token '" + t.text + "'");
  }
}

constexpr std::string_view kUnknownRows = "*****";

bool is_comment(const std::vector<std::string>& words) {
  return !words.empty() && words.front().front() == '*';
}

}  // namespace

std::string_view representation_keyword(Representation rep) {
  return rep == Representation::H ? "H-representation" : "V-representation";
}

bool Problem::is_linearity(std::size_t row) const {
  return std::binary_search(linearity.begin(), linearity.end(), row);
}

Problem parse_problem(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_problem(in);
}

Problem parse_problem(std::istream& in) {
  Problem p;
  std::string line;
  std::size_t lineno = 0;
  bool seen_rep = false;
  bool seen_name = false;
  std::vector<std::string> pending_linearity;
  std::size_t linearity_line = 0;

  // Header section up to `begin`.
  bool begun = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto words = split_ws(line);
    if (words.empty() || is_comment(words)) continue;
    const auto& w = words.front();
    if (w == "H-representation" || w == "V-representation") {
      if (seen_rep) throw ParseError(lineno, "duplicate representation line");
      p.rep = w == "H-representation" ? Representation::H : Representation::V;
      seen_rep = true;
    } else if (w == "linearity") {
      pending_linearity.assign(words.begin() + 1, words.end());
      linearity_line = lineno;
    } else if (w == "begin") {
      begun = true;
      break;
    } else if (!seen_name && !seen_rep) {
      p.name = line;
      while (!p.name.empty() && (p.name.back() == '\r' || p.name.back() == ' ')) p.name.pop_back();
      seen_name = true;
    } else {
      throw UnsupportedOption("line " + std::to_string(lineno) + ": unsupported option '" + w + "'");
    }
  }
  if (!begun) throw ParseError(lineno, "missing 'begin'");

  // Dimension line.
  std::vector<std::string> dims;
  while (std::getline(in, line)) {
    ++lineno;
    dims = split_ws(line);
    if (!dims.empty() && (dims[0] == kUnknownRows || !is_comment(dims))) break;
  }
  if (dims.size() != 3) throw ParseError(lineno, "expected 'm n rational'");
  // lrs writes "*****" when the row count is not known in advance.
  const bool count_rows = dims[0] == kUnknownRows;
  p.m = count_rows ? 1 : parse_count(dims[0], lineno, "row count");
  p.n = parse_count(dims[1], lineno, "column count");
  if (dims[2] == "integer") {
    throw UnsupportedOption("line " + std::to_string(lineno) + ": integer mode is not supported");
  }
  if (dims[2] != "rational") throw ParseError(lineno, "expected number type 'rational'");
  if (p.m < 1) throw ParseError(lineno, "row count must be at least 1");
  if (p.n < 2) throw ParseError(lineno, "column count must be at least 2");

  // Data rows: a token stream of m*n numbers terminated by `end`.
  std::vector<Token> numbers;
  bool ended = false;
  while (!ended && std::getline(in, line)) {
    ++lineno;
    auto words = split_ws(line);
    if (words.empty() || is_comment(words)) continue;
    for (auto& w : words) {
      if (w == "end") {
        ended = true;
        break;
      }
      numbers.push_back({std::move(w), lineno});
    }
  }
  if (!ended) throw ParseError(lineno, "missing 'end'");
  if (count_rows) {
    if (numbers.empty() || numbers.size() % p.n != 0) {
      throw ParseError(lineno, "row count mismatch: " + std::to_string(numbers.size()) +
                                   " entries do not fill rows of " + std::to_string(p.n));
    }
    p.m = numbers.size() / p.n;
  }
  if (numbers.size() != p.m * p.n) {
    throw ParseError(lineno, "row count mismatch: expected " + std::to_string(p.m) + " rows of " +
                                 std::to_string(p.n) + " entries, found " +
                                 std::to_string(numbers.size()) + " entries");
  }
  p.rows.assign(p.m, {});
  for (std::size_t i = 0; i < p.m; ++i) {
    auto& row = p.rows[i];
    row.reserve(p.n);
    for (std::size_t j = 0; j < p.n; ++j) row.push_back(parse_number(numbers[i * p.n + j]));
    if (p.rep == Representation::V && row[0] != Rational(0) && row[0] != Rational(1)) {
      throw ParseError(numbers[i * p.n].line, "V-representation rows must start with 0 or 1");
    }
  }

  if (!pending_linearity.empty() || linearity_line != 0) {
    if (pending_linearity.empty()) throw ParseError(linearity_line, "empty linearity line");
    auto k = parse_count(pending_linearity[0], linearity_line, "linearity count");
    if (pending_linearity.size() != k + 1) throw ParseError(linearity_line, "linearity count mismatch");
    for (std::size_t i = 1; i <= k; ++i) {
      auto r = parse_count(pending_linearity[i], linearity_line, "linearity index");
      if (r < 1 || r > p.m) throw ParseError(linearity_line, "linearity index out of range");
      p.linearity.push_back(r);
    }
    std::sort(p.linearity.begin(), p.linearity.end());
    p.linearity.erase(std::unique(p.linearity.begin(), p.linearity.end()), p.linearity.end());
  }

  // Trailing option lines.
  while (std::getline(in, line)) {
    ++lineno;
    auto words = split_ws(line);
    if (words.empty()) continue;
    if (!is_comment(words) &&
        std::find(kSemanticOptions.begin(), kSemanticOptions.end(), words.front()) !=
            kSemanticOptions.end()) {
      throw UnsupportedOption("line " + std::to_string(lineno) + ": unsupported option '" +
                              words.front() + "'");
    }
    p.trailing.push_back(line);
  }
  return p;
}

std::string write_problem(const Problem& p) {
  std::string out;
  if (!p.name.empty()) out += p.name + "\n";
  out += representation_keyword(p.rep);
  out += "\n";
  if (!p.linearity.empty()) {
    out += "linearity " + std::to_string(p.linearity.size());
    for (auto r : p.linearity) out += " " + std::to_string(r);
    out += "\n";
  }
  out += "begin\n";
  out += std::to_string(p.m) + " " + std::to_string(p.n) + " rational\n";
  for (const auto& row : p.rows) {
    for (const auto& v : row) {
      out += ' ';
      out += v.to_string();
    }
    out += '\n';
  }
  out += "end\n";
  return out;
}

std::string write_output_header(std::string_view name, Representation output, std::size_t columns) {
  std::string out;
  if (!name.empty()) out += std::string(name) + "\n";
  out += representation_keyword(output);
  out += "\nbegin\n";
  out += std::string(kUnknownRows) + " " + std::to_string(columns) + " rational\n";
  return out;
}

std::string write_record(const OutputRecord& rec, RecordMode mode) {
  const bool mark = mode == RecordMode::flagged && rec.unexplored;
  std::string out;
  switch (rec.kind) {
    case RecordKind::vertex:
      out = " 1";
      break;
    case RecordKind::ray:
      out = " 0";
      break;
    case RecordKind::facet:
      break;
    case RecordKind::cobasis:
      if (!mark) return {};
      return "*cobasis " + rec.cobasis.to_string() + " " + std::string(kUnexploredMarker);
  }
  for (const auto& v : rec.coords) {
    out += ' ';
    out += v.to_string();
  }
  if (mark) {
    out += ' ';
    out += kUnexploredMarker;
  }
  return out;
}

CountingStats& CountingStats::operator+=(const CountingStats& o) {
  bases += o.bases;
  vertices += o.vertices;
  rays += o.rays;
  jobs_done += o.jobs_done;
  max_depth_seen = std::max(max_depth_seen, o.max_depth_seen);
  return *this;
}

std::string write_summary(const CountingStats& s, Representation output) {
  const char* what = output == Representation::V ? "vertices" : "facets";
  return "*Totals: bases=" + std::to_string(s.bases) + " " + what + "=" + std::to_string(s.vertices) +
         " rays=" + std::to_string(s.rays) + "\n*Jobs: " + std::to_string(s.jobs_done) +
         " max_depth=" + std::to_string(s.max_depth_seen) + "\n";
}

}  // namespace polyenum
