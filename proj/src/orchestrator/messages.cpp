#include "polyenum/messages.hpp"

#include <charconv>
#include <sstream>

#include "polyenum/errors.hpp"

namespace polyenum {

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

void put_stats(std::string& out, const CountingStats& s) {
  out += "stats " + std::to_string(s.bases) + ' ' + std::to_string(s.vertices) + ' ' + std::to_string(s.rays) +
         ' ' + std::to_string(s.jobs_done) + ' ' + std::to_string(s.max_depth_seen) + '\n';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }

  std::string_view line() {
    if (at_end()) throw ProtocolError("truncated message");
    auto nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) nl = text_.size();
    auto l = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    return l;
  }

  std::string_view rest() {
    auto r = at_end() ? std::string_view{} : text_.substr(pos_);
    pos_ = text_.size();
    return r;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Splits "word a b c" and checks the leading word.
std::vector<std::string_view> fields(std::string_view line, std::string_view word, std::size_t count) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  if (out.empty() || out[0] != word || out.size() != count + 1) {
    throw ProtocolError("malformed '" + std::string(word) + "' line: " + std::string(line));
  }
  out.erase(out.begin());
  return out;
}

std::uint64_t number(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ProtocolError("bad number '" + std::string(s) + "'");
  return v;
}

CountingStats get_stats(Reader& r) {
  auto f = fields(r.line(), "stats", 5);
  return CountingStats{number(f[0]), number(f[1]), number(f[2]), number(f[3]), number(f[4])};
}

CobasisKey get_key(std::string_view s) {
  try {
    return CobasisKey::parse(s);
  } catch (const std::invalid_argument& e) {
    throw ProtocolError(std::string("bad cobasis key: ") + e.what());
  }
}

std::string_view after_word(std::string_view line, std::string_view word) {
  if (line.size() <= word.size() || line.substr(0, word.size()) != word || line[word.size()] != ' ') {
    throw ProtocolError("expected '" + std::string(word) + "' line");
  }
  return line.substr(word.size() + 1);
}

}  // namespace

std::string_view message_name(const Message& m) {
  return std::visit(Overload{
                        [](const InputProblem&) { return "InputProblem"; },
                        [](const Assign&) { return "Assign"; },
                        [](const Unfinished&) { return "Unfinished"; },
                        [](const OutputBatch&) { return "OutputBatch"; },
                        [](const CheckpointNotice&) { return "CheckpointNotice"; },
                        [](const StatsReport&) { return "StatsReport"; },
                        [](const Terminate&) { return "Terminate"; },
                        [](const Abort&) { return "Abort"; },
                    },
                    m);
}

bool is_legal_edge(const Message& m, Rank from, Rank to) {
  const bool from_worker = from > kConsumerRank;
  const bool to_worker = to > kConsumerRank;
  return std::visit(Overload{
                        [&](const InputProblem&) { return from == kMasterRank && to_worker; },
                        [&](const Assign&) { return from == kMasterRank && to_worker; },
                        [&](const Unfinished&) { return from_worker && to == kMasterRank; },
                        [&](const Abort&) { return from_worker && to == kMasterRank; },
                        [&](const OutputBatch&) { return from_worker && to == kConsumerRank; },
                        [&](const CheckpointNotice&) { return from == kMasterRank && to == kConsumerRank; },
                        [&](const StatsReport&) {
                          return (from == kMasterRank && to == kConsumerRank) ||
                                 (from == kConsumerRank && to == kMasterRank);
                        },
                        [&](const Terminate&) { return from == kMasterRank && to != kMasterRank; },
                    },
                    m);
}

std::string encode(const Message& m) {
  std::string out;
  std::visit(Overload{
                 [&](const InputProblem& p) { out = "problem\n" + p.text; },
                 [&](const Assign& a) {
                   out = "assign " + std::to_string(a.job_id) + '\n';
                   out += "key " + a.job.key.to_string() + '\n';
                   out += "maxd " + (a.job.maxd ? std::to_string(*a.job.maxd) : std::string("inf")) + '\n';
                   out += "maxc " + std::to_string(a.job.maxc) + '\n';
                   out += a.job.output_root ? "root 1\n" : "root 0\n";
                 },
                 [&](const Unfinished& u) {
                   out = "unfinished " + std::to_string(u.job_id) + ' ' + std::to_string(u.explored) + ' ' +
                         std::to_string(u.flagged) + '\n';
                   put_stats(out, u.delta);
                   out += "keys " + std::to_string(u.keys.size()) + '\n';
                   for (const auto& k : u.keys) out += k.to_string() + '\n';
                 },
                 [&](const OutputBatch& b) {
                   out = "output " + std::to_string(b.job_id) + (b.last ? " 1\n" : " 0\n");
                   put_stats(out, b.delta);
                   out += "lines " + std::to_string(b.lines.size()) + '\n';
                   for (const auto& l : b.lines) out += l + '\n';
                 },
                 [&](const CheckpointNotice& c) { out = "checkpoint " + std::to_string(c.jobs) + '\n'; },
                 [&](const StatsReport& s) {
                   out = "report\n";
                   put_stats(out, s.stats);
                 },
                 [&](const Terminate& t) { out = "terminate " + std::to_string(t.jobs) + '\n'; },
                 [&](const Abort& a) { out = "abort\n" + a.reason; },
             },
             m);
  return out;
}

Message decode(std::string_view text) {
  Reader r(text);
  const std::string_view head = r.line();
  const std::string_view tag = head.substr(0, head.find(' '));
  if (tag == "problem") return InputProblem{std::string(r.rest())};
  if (tag == "abort") return Abort{std::string(r.rest())};
  if (tag == "assign") {
    Assign a;
    a.job_id = number(fields(head, "assign", 1)[0]);
    a.job.key = get_key(after_word(r.line(), "key"));
    auto maxd = fields(r.line(), "maxd", 1)[0];
    if (maxd != "inf") a.job.maxd = number(maxd);
    a.job.maxc = number(fields(r.line(), "maxc", 1)[0]);
    auto root = fields(r.line(), "root", 1)[0];
    if (root != "0" && root != "1") throw ProtocolError("bad root flag");
    a.job.output_root = root == "1";
    return a;
  }
  if (tag == "unfinished") {
    Unfinished u;
    auto f = fields(head, "unfinished", 3);
    u.job_id = number(f[0]);
    u.explored = number(f[1]);
    u.flagged = number(f[2]);
    u.delta = get_stats(r);
    const auto n = number(fields(r.line(), "keys", 1)[0]);
    for (std::uint64_t i = 0; i < n; ++i) u.keys.push_back(get_key(r.line()));
    return u;
  }
  if (tag == "output") {
    OutputBatch b;
    auto f = fields(head, "output", 2);
    b.job_id = number(f[0]);
    if (f[1] != "0" && f[1] != "1") throw ProtocolError("bad last flag");
    b.last = f[1] == "1";
    b.delta = get_stats(r);
    const auto n = number(fields(r.line(), "lines", 1)[0]);
    for (std::uint64_t i = 0; i < n; ++i) b.lines.emplace_back(r.line());
    return b;
  }
  if (tag == "checkpoint") return CheckpointNotice{number(fields(head, "checkpoint", 1)[0])};
  if (tag == "report") return StatsReport{get_stats(r)};
  if (tag == "terminate") return Terminate{number(fields(head, "terminate", 1)[0])};
  throw ProtocolError("unknown message tag '" + std::string(tag) + "'");
}

}  // namespace polyenum
