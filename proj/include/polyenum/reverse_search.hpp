#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "polyenum/dictionary.hpp"
#include "polyenum/polyio.hpp"

namespace polyenum {

/// nullopt means unbounded.
using Bound = std::optional<std::size_t>;

struct BudgetParams {
  Bound max_depth;
  Bound max_cobases;

  static BudgetParams unbounded() { return {}; }
};

using RecordSink = std::function<void(const OutputRecord&)>;

struct ScanResult {
  std::vector<OutputRecord> records;  // filled only when no sink is given
  std::vector<CobasisKey> unexplored;
  std::size_t explored_count = 0;
  std::size_t flagged_count = 0;
  CountingStats stats;  // bases, vertices/facets, rays and depth of the emitted records
};

/// Adds rec to the vertex/ray counts and depth maximum (not to bases).
void tally(CountingStats& stats, const OutputRecord& rec);

/// The output record for the node `dict` currently sits at.
OutputRecord node_record(const Dictionary& dict, bool unexplored);

/// Budgeted reverse search from `start`. Emits every tree node below start
/// (never start itself); nodes reached once the budget or depth limit is hit
/// are emitted flagged and returned as unexplored keys.
ScanResult brs_scan(const Dictionary& start, const BudgetParams& params, const RecordSink& sink = {});

/// Unbudgeted reverse search (brs_scan with both bounds lifted).
ScanResult rs_scan(const Dictionary& start, const RecordSink& sink = {});

/// Runs brs_scan from root, then restarts every unexplored key (stack order)
/// with unbounded depth and the same max_cobases until none remain.
std::vector<OutputRecord> replay_partition(const Dictionary& root, const BudgetParams& params);

}  // namespace polyenum
