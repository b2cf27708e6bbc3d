#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polyenum/cobasis_key.hpp"
#include "polyenum/polyio.hpp"
#include "polyenum/reverse_search.hpp"

namespace polyenum {

using Rank = std::size_t;

inline constexpr Rank kMasterRank = 0;
inline constexpr Rank kConsumerRank = 1;

/// Workers are numbered from 1; worker i runs at rank i + 1.
constexpr Rank worker_rank(std::size_t worker) { return worker + 1; }
constexpr std::size_t worker_of(Rank rank) { return rank - 1; }

struct Job {
  CobasisKey key;
  Bound maxd;
  std::size_t maxc = 1;
  bool output_root = false;

  friend bool operator==(const Job&, const Job&) = default;
};

struct InputProblem {
  std::string text;
  friend bool operator==(const InputProblem&, const InputProblem&) = default;
};

struct Assign {
  std::uint64_t job_id = 0;
  Job job;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct Unfinished {
  std::uint64_t job_id = 0;
  std::vector<CobasisKey> keys;
  CountingStats delta;
  std::size_t explored = 0;
  std::size_t flagged = 0;
  friend bool operator==(const Unfinished&, const Unfinished&) = default;
};

/// Output lines of one job. A job's lines may be split over several
/// batches; the stats delta rides on the batch with last set.
struct OutputBatch {
  std::uint64_t job_id = 0;
  std::vector<std::string> lines;
  CountingStats delta;
  bool last = true;
  friend bool operator==(const OutputBatch&, const OutputBatch&) = default;
};

/// Asks the consumer for its statistics once `jobs` jobs have been drained.
struct CheckpointNotice {
  std::size_t jobs = 0;
  friend bool operator==(const CheckpointNotice&, const CheckpointNotice&) = default;
};

struct StatsReport {
  CountingStats stats;
  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

/// To the consumer, `jobs` is the number of jobs whose output must arrive
/// before it closes the stream. Workers ignore it.
struct Terminate {
  std::size_t jobs = 0;
  friend bool operator==(const Terminate&, const Terminate&) = default;
};

/// Worker to master: the worker hit an error and is halting.
struct Abort {
  std::string reason;
  friend bool operator==(const Abort&, const Abort&) = default;
};

using Message =
    std::variant<InputProblem, Assign, Unfinished, OutputBatch, CheckpointNotice, StatsReport, Terminate, Abort>;

std::string_view message_name(const Message& m);

/// Whether a message of this type may travel from `from` to `to`.
bool is_legal_edge(const Message& m, Rank from, Rank to);

/// Line-oriented text encoding; decode throws ProtocolError.
std::string encode(const Message& m);
Message decode(std::string_view text);

/// Upper bound on lines per OutputBatch produced by workers.
inline constexpr std::size_t kBatchLines = 4096;

}  // namespace polyenum
