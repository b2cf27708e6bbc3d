#include <algorithm>
#include <fstream>
#include <sstream>

#include "polyenum/errors.hpp"
#include "polyenum/orchestrator.hpp"

namespace polyenum {

std::pair<Bound, std::size_t> budget_policy(std::size_t queue_len, std::size_t size, const MasterConfig& cfg) {
  Bound maxd;
  if (queue_len < size * cfg.lmin) maxd = cfg.max_depth;
  const std::size_t maxc = queue_len > size * cfg.lmax ? cfg.scale * cfg.max_cobases : cfg.max_cobases;
  return {maxd, maxc};
}

MasterRole::MasterRole(MasterConfig cfg, std::string problem_text, CobasisKey root_key)
    : cfg_(std::move(cfg)), problem_text_(std::move(problem_text)), root_key_(std::move(root_key)) {
  if (cfg_.workers < 1) throw std::invalid_argument("at least one worker is required");
  running_.resize(cfg_.workers);
  lost_.assign(cfg_.workers, false);
}

MasterRole::MasterRole(MasterConfig cfg, std::string problem_text, CheckpointImage restart)
    : cfg_(std::move(cfg)), problem_text_(std::move(problem_text)) {
  if (cfg_.workers < 1) throw std::invalid_argument("at least one worker is required");
  running_.resize(cfg_.workers);
  lost_.assign(cfg_.workers, false);
  stack_ = std::move(restart.jobs);
  report_.stats = restart.stats;
}

double MasterRole::elapsed() const { return std::chrono::duration<double>(Clock::now() - t0_).count(); }

std::size_t MasterRole::busy_count() const {
  return static_cast<std::size_t>(std::count_if(running_.begin(), running_.end(), [](auto& r) { return r.has_value(); }));
}

void MasterRole::start(Outbox& out) {
  t0_ = Clock::now();
  for (std::size_t w = 1; w <= cfg_.workers; ++w) out.send(worker_rank(w), InputProblem{problem_text_});
  if (root_key_) {
    assign(1, Job{*root_key_, cfg_.init_depth, cfg_.max_cobases, true}, out);
  } else {
    out.send(kConsumerRank, StatsReport{report_.stats});
  }
  report_.max_queue = stack_.size();
  record_histogram(true);
  after_event(out);
}

void MasterRole::assign(std::size_t worker, Job job, Outbox& out) {
  JobLogEntry entry;
  entry.job_id = report_.jobs.size() + 1;
  entry.worker = worker;
  entry.job = job;
  report_.jobs.push_back(entry);
  running_[worker - 1] = report_.jobs.size() - 1;
  out.send(worker_rank(worker), Assign{entry.job_id, std::move(job)});
}

void MasterRole::dispatch(Outbox& out) {
  while (!stack_.empty()) {
    std::size_t free = 0;
    while (free < running_.size() && (running_[free] || lost_[free])) ++free;
    if (free == running_.size()) break;
    auto [maxd, maxc] = budget_policy(stack_.size(), size(), cfg_);
    CobasisKey key = std::move(stack_.back());
    stack_.pop_back();
    assign(free + 1, Job{std::move(key), maxd, maxc, false}, out);
  }
}

void MasterRole::after_event(Outbox& out) {
  if (phase_ != Phase::running) return;
  if (!stopping_) {
    if (cfg_.stop_after_bases && session_bases_ >= *cfg_.stop_after_bases) stopping_ = true;
    if (cfg_.time_limit && elapsed() >= *cfg_.time_limit) stopping_ = true;
    if (cfg_.stop_flag && cfg_.stop_flag->load()) stopping_ = true;
  }
  if (!stopping_) dispatch(out);
  record_histogram(false);
  if (busy_count() > 0) return;
  if (stack_.empty()) {
    finish(out);
  } else if (stopping_) {
    out.send(kConsumerRank, CheckpointNotice{jobs_answered_});
    phase_ = Phase::awaiting_stats;
  }
}

void MasterRole::finish(Outbox& out) {
  for (std::size_t w = 1; w <= cfg_.workers; ++w) {
    if (!lost_[w - 1]) out.send(worker_rank(w), Terminate{jobs_answered_});
  }
  out.send(kConsumerRank, Terminate{jobs_answered_});
  phase_ = Phase::finished;
  record_histogram(true);
}

void MasterRole::on_message(Rank from, Message msg, Outbox& out) {
  if (auto* u = std::get_if<Unfinished>(&msg)) {
    if (from <= kConsumerRank || worker_of(from) > cfg_.workers) throw ProtocolError("Unfinished from a non-worker");
    auto& slot = running_[worker_of(from) - 1];
    if (!slot || report_.jobs[*slot].job_id != u->job_id) {
      throw ProtocolError("unexpected Unfinished for job " + std::to_string(u->job_id));
    }
    auto& entry = report_.jobs[*slot];
    entry.explored = u->explored;
    entry.flagged = u->flagged;
    entry.returned = u->keys;
    entry.answered = true;
    slot.reset();
    ++jobs_answered_;
    report_.stats += u->delta;
    session_bases_ += u->delta.bases;
    stack_.insert(stack_.end(), std::make_move_iterator(u->keys.begin()), std::make_move_iterator(u->keys.end()));
    report_.max_queue = std::max(report_.max_queue, stack_.size());
    after_event(out);
  } else if (auto* r = std::get_if<StatsReport>(&msg)) {
    if (phase_ != Phase::awaiting_stats) throw ProtocolError("unsolicited StatsReport");
    CheckpointImage img;
    img.stats = r->stats;
    img.jobs = stack_;
    if (cfg_.checkpoint_path) checkpoint_write_file(*cfg_.checkpoint_path, img);
    report_.checkpoint = std::move(img);
    finish(out);
  } else if (auto* a = std::get_if<Abort>(&msg)) {
    throw ProtocolError("worker " + std::to_string(worker_of(from)) + " halted: " + a->reason);
  } else {
    throw ProtocolError(std::string("master cannot handle ") + std::string(message_name(msg)));
  }
}

void MasterRole::on_closed(Rank peer, Outbox& out) {
  if (phase_ == Phase::finished) return;
  if (peer == kConsumerRank) throw WorkerLost("consumer channel closed");
  const std::size_t w = worker_of(peer);
  if (w == 0 || w > cfg_.workers) return;
  if (!running_[w - 1]) {
    lost_[w - 1] = true;
    if (std::all_of(lost_.begin(), lost_.end(), [](bool b) { return b; })) {
      throw WorkerLost("all workers lost; " + std::to_string(stack_.size()) + " jobs queued");
    }
    after_event(out);
    return;
  }
  std::ostringstream diag;
  diag << "worker " << w << " lost during job " << report_.jobs[*running_[w - 1]].job.key.to_string();
  for (std::size_t i = 0; i < running_.size(); ++i) {
    if (running_[i] && i + 1 != w) diag << "; running on worker " << i + 1 << ": " << report_.jobs[*running_[i]].job.key.to_string();
  }
  diag << "; " << stack_.size() << " jobs queued";
  throw WorkerLost(diag.str());
}

void MasterRole::on_tick(Outbox& out) {
  if (phase_ != Phase::running) return;
  after_event(out);
}

void MasterRole::record_histogram(bool force) {
  if (!cfg_.histogram) return;
  const double t = elapsed();
  const std::size_t q = stack_.size();
  const bool changed_low = q < size() * cfg_.lmin && (!last_queue_ || *last_queue_ != q);
  const bool due = last_histogram_ < 0 || t - last_histogram_ >= cfg_.histogram_interval;
  if (!force && !changed_low && !due) return;
  histogram_append(*cfg_.histogram, HistogramRecord{t, busy_count(), q});
  last_histogram_ = t;
  last_queue_ = q;
}

// Histogram.

std::string histogram_line(const HistogramRecord& rec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", rec.t);
  std::string t = buf;
  while (t.size() > 1 && t.back() == '0' && t[t.size() - 2] != '.') t.pop_back();
  return t + " " + std::to_string(rec.busy) + " " + std::to_string(rec.queue);
}

void histogram_append(std::ostream& out, const HistogramRecord& rec) {
  try {
    out << histogram_line(rec) << '\n';
    out.flush();
    out.clear();
  } catch (...) {
  }
}

// Checkpoints.

std::string checkpoint_save(const CheckpointImage& img) {
  const auto& s = img.stats;
  std::string out = "polyenum-chk " + img.version + "\n";
  out += std::to_string(s.bases) + " " + std::to_string(s.vertices) + " " + std::to_string(s.rays) + " " +
         std::to_string(s.jobs_done) + " " + std::to_string(s.max_depth_seen) + "\n";
  out += std::to_string(img.jobs.size()) + "\n";
  for (const auto& k : img.jobs) out += k.to_string() + "\n";
  return out;
}

namespace {

std::vector<std::string> checkpoint_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string l(text.substr(pos, nl - pos));
    if (!l.empty() && l.back() == '\r') l.pop_back();
    lines.push_back(std::move(l));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::size_t> numbers(const std::string& line, std::size_t count, std::size_t lineno) {
  std::istringstream in(line);
  std::vector<std::size_t> out;
  std::string tok;
  while (in >> tok) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) break;
    try {
      out.push_back(std::stoull(tok));
    } catch (const std::out_of_range&) {
      break;
    }
  }
  if (out.size() != count || (in >> tok)) {
    throw MalformedJobLine("checkpoint line " + std::to_string(lineno) + ": expected " + std::to_string(count) +
                           " integers");
  }
  return out;
}

}  // namespace

CheckpointImage checkpoint_load(std::string_view text) {
  auto lines = checkpoint_lines(text);
  if (lines.empty() || lines[0].rfind("polyenum-chk ", 0) != 0) throw BadVersion("not a checkpoint file");
  CheckpointImage img;
  img.version = lines[0].substr(13);
  if (img.version != "1") throw BadVersion("unsupported checkpoint version '" + img.version + "'");
  if (lines.size() < 3) throw MalformedJobLine("checkpoint truncated");
  auto s = numbers(lines[1], 5, 2);
  img.stats = CountingStats{s[0], s[1], s[2], s[3], s[4]};
  const std::size_t n = numbers(lines[2], 1, 3)[0];
  std::size_t i = 3;
  for (; i < lines.size() && img.jobs.size() < n; ++i) {
    try {
      img.jobs.push_back(CobasisKey::parse(lines[i]));
    } catch (const std::invalid_argument& e) {
      throw MalformedJobLine("checkpoint line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (img.jobs.size() != n) throw MalformedJobLine("checkpoint lists fewer jobs than its count");
  for (; i < lines.size(); ++i) {
    if (!lines[i].empty()) throw MalformedJobLine("checkpoint line " + std::to_string(i + 1) + ": extra data");
  }
  return img;
}

void checkpoint_write_file(const std::filesystem::path& path, const CheckpointImage& img) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << checkpoint_save(img);
    f.flush();
    if (!f) throw SinkWriteFailure("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

CheckpointImage checkpoint_read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open checkpoint " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return checkpoint_load(ss.str());
}

}  // namespace polyenum
