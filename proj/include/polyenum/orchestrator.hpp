#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyenum/dictionary.hpp"
#include "polyenum/messages.hpp"
#include "polyenum/transport.hpp"

namespace polyenum {

struct MasterConfig {
  std::size_t workers = 1;
  std::size_t init_depth = 2;
  std::size_t max_cobases = 50;
  std::size_t max_depth = 2;
  std::size_t lmin = 3;
  std::size_t lmax = 3;
  std::size_t scale = 100;

  // Checkpoint triggers. Any one stops dispatching; the run then checkpoints
  // at quiescence.
  std::optional<std::size_t> stop_after_bases;  // bases reported in this session
  std::optional<double> time_limit;             // seconds
  const std::atomic<bool>* stop_flag = nullptr;
  std::optional<std::filesystem::path> checkpoint_path;

  std::ostream* histogram = nullptr;
  double histogram_interval = 1.0;  // seconds
};

/// Job bounds for the next dispatch given the current length of L.
std::pair<Bound, std::size_t> budget_policy(std::size_t queue_len, std::size_t size, const MasterConfig& cfg);

struct CheckpointImage {
  std::string version = "1";
  CountingStats stats;
  std::vector<CobasisKey> jobs;  // bottom of the stack first

  friend bool operator==(const CheckpointImage&, const CheckpointImage&) = default;
};

std::string checkpoint_save(const CheckpointImage& img);
/// Throws BadVersion or MalformedJobLine.
CheckpointImage checkpoint_load(std::string_view text);
void checkpoint_write_file(const std::filesystem::path& path, const CheckpointImage& img);
CheckpointImage checkpoint_read_file(const std::filesystem::path& path);

struct HistogramRecord {
  double t = 0;
  std::size_t busy = 0;
  std::size_t queue = 0;
};

/// "t busy queue"; t printed with up to three decimals and at least one.
std::string histogram_line(const HistogramRecord& rec);
/// Appends one line. Stream failures are swallowed.
void histogram_append(std::ostream& out, const HistogramRecord& rec);

/// Sends messages on behalf of a role.
class Outbox {
 public:
  virtual ~Outbox() = default;
  virtual void send(Rank to, Message m) = 0;
};

/// A process of the master/worker/consumer system written as an event
/// handler, so the same code runs on threads or in a single event loop.
class Role {
 public:
  virtual ~Role() = default;
  virtual void start(Outbox&) {}
  virtual void on_message(Rank from, Message msg, Outbox& out) = 0;
  /// The channel from `peer` closed.
  virtual void on_closed(Rank /*peer*/, Outbox&) {}
  /// Called between messages and on receive timeouts.
  virtual void on_tick(Outbox&) {}
  virtual bool done() const = 0;
};

struct JobLogEntry {
  std::uint64_t job_id = 0;
  std::size_t worker = 0;
  Job job;
  std::size_t explored = 0;
  std::size_t flagged = 0;
  std::vector<CobasisKey> returned;  // unfinished keys sent back
  bool answered = false;
};

struct MasterReport {
  CountingStats stats;
  std::vector<JobLogEntry> jobs;
  std::optional<CheckpointImage> checkpoint;  // set when the run stopped early
  std::size_t max_queue = 0;
};

class MasterRole : public Role {
 public:
  using Clock = std::chrono::steady_clock;

  /// A fresh run starts from the root cobasis; a restart from the image.
  MasterRole(MasterConfig cfg, std::string problem_text, CobasisKey root_key);
  MasterRole(MasterConfig cfg, std::string problem_text, CheckpointImage restart);

  void start(Outbox& out) override;
  void on_message(Rank from, Message msg, Outbox& out) override;
  void on_closed(Rank peer, Outbox& out) override;
  void on_tick(Outbox& out) override;
  bool done() const override { return phase_ == Phase::finished; }

  std::size_t size() const { return cfg_.workers + 2; }
  std::size_t queue_length() const { return stack_.size(); }
  std::size_t busy_count() const;
  const MasterReport& report() const { return report_; }

  /// Requests a checkpoint at the next quiescent point.
  void request_stop() { stopping_ = true; }

 private:
  enum class Phase { running, awaiting_stats, finished };

  double elapsed() const;
  void assign(std::size_t worker, Job job, Outbox& out);
  void dispatch(Outbox& out);
  void after_event(Outbox& out);
  void finish(Outbox& out);
  void record_histogram(bool force);

  MasterConfig cfg_;
  std::string problem_text_;
  std::optional<CobasisKey> root_key_;
  std::vector<CobasisKey> stack_;
  std::vector<std::optional<std::size_t>> running_;  // per worker: index into report_.jobs
  std::vector<bool> lost_;
  Phase phase_ = Phase::running;
  bool stopping_ = false;
  std::size_t session_bases_ = 0;
  std::size_t jobs_answered_ = 0;
  MasterReport report_;
  Clock::time_point t0_;
  double last_histogram_ = -1;
  std::optional<std::size_t> last_queue_;
};

class WorkerRole : public Role {
 public:
  explicit WorkerRole(std::size_t batch_lines = kBatchLines) : batch_lines_(batch_lines) {}

  void on_message(Rank from, Message msg, Outbox& out) override;
  bool done() const override { return done_; }

  std::size_t jobs_done() const { return jobs_done_; }

 private:
  void run_job(const Assign& a, Outbox& out);

  std::size_t batch_lines_;
  std::optional<Dictionary> root_;
  bool done_ = false;
  std::size_t jobs_done_ = 0;
};

struct ConsumerConfig {
  std::string name;
  Representation output = Representation::V;
  std::size_t columns = 0;
};

class ConsumerRole : public Role {
 public:
  ConsumerRole(ConsumerConfig cfg, std::ostream& out);

  void start(Outbox& out) override;
  void on_message(Rank from, Message msg, Outbox& out) override;
  bool done() const override { return done_; }

  const CountingStats& stats() const { return stats_; }
  std::size_t lines_written() const { return lines_written_; }

 private:
  void write(const std::string& text);
  void settle(Outbox& out);

  ConsumerConfig cfg_;
  std::ostream& sink_;
  CountingStats stats_;
  std::size_t lines_written_ = 0;
  std::size_t jobs_drained_ = 0;
  std::optional<std::size_t> notice_jobs_;
  std::optional<std::size_t> terminate_jobs_;
  bool done_ = false;
};

/// Runs one role until done over an endpoint. Returns early if the network
/// shuts down.
void drive(Role& role, Endpoint& ep, std::chrono::milliseconds poll = std::chrono::milliseconds(50));

enum class Binding { in_process, sockets };

struct RunOptions {
  MasterConfig master;
  Binding binding = Binding::in_process;
  std::optional<CheckpointImage> restart;
  std::size_t batch_lines = kBatchLines;
};

struct RunResult {
  MasterReport master;
  CountingStats consumer_stats;
};

/// Full parallel run: master, consumer and cfg.workers workers each on a
/// thread. Output goes to `out`.
RunResult run_parallel(const Problem& problem, const RunOptions& opts, std::ostream& out);

/// The same system in one thread. Pending messages are delivered in an
/// order drawn from `seed` while keeping each sender/receiver pair FIFO.
RunResult run_event_loop(const Problem& problem, const RunOptions& opts, std::ostream& out, std::uint64_t seed);

/// Sequential reference run writing the same stream layout as the consumer.
CountingStats run_sequential(const Problem& problem, std::ostream& out);

}  // namespace polyenum
