#include "polyenum/reverse_search.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyenum {

void tally(CountingStats& stats, const OutputRecord& rec) {
  switch (rec.kind) {
    case RecordKind::vertex:
    case RecordKind::facet:
      ++stats.vertices;
      break;
    case RecordKind::ray:
      ++stats.rays;
      break;
    case RecordKind::cobasis:
      break;
  }
  stats.max_depth_seen = std::max(stats.max_depth_seen, rec.depth);
}

OutputRecord node_record(const Dictionary& dict, bool unexplored) {
  OutputRecord rec;
  rec.cobasis = dict.key();
  rec.depth = dict.depth();
  rec.unexplored = unexplored;
  auto vertex = lexmin_vertex(dict);
  if (vertex.is_lexmin) {
    if (dict.model().input == Representation::V) {
      rec.kind = RecordKind::facet;
      rec.coords = facet_row(dict.model(), vertex.coords);
    } else {
      rec.kind = RecordKind::vertex;
      rec.coords = std::move(vertex.coords);
    }
  }
  return rec;
}

ScanResult brs_scan(const Dictionary& start, const BudgetParams& params, const RecordSink& sink) {
  if ((params.max_depth && *params.max_depth == 0) || (params.max_cobases && *params.max_cobases == 0)) {
    throw std::invalid_argument("budget parameters must be positive");
  }
  ScanResult result;
  auto emit = [&](OutputRecord rec) {
    tally(result.stats, rec);
    if (sink) {
      sink(rec);
    } else {
      result.records.push_back(std::move(rec));
    }
  };

  Dictionary v = start;
  const std::size_t delta = v.cols();
  std::size_t j = 0;  // columns [0, j) of v are done
  std::size_t depth = 0;
  std::size_t cobases = 0;

  do {
    bool unexplored = false;
    while (j < delta && !unexplored) {
      const std::size_t col = j++;
      auto row = v.lex_ratio_row(col);
      if (!row) {
        if (is_lexmin_ray(v, col)) {
          OutputRecord ray;
          ray.kind = RecordKind::ray;
          ray.coords = ray_direction(v, col);
          ray.cobasis = v.key();
          ray.depth = v.depth();
          emit(std::move(ray));
        }
        continue;
      }
      if (!v.is_reverse_pivot(*row, col)) continue;

      // forward step
      v.pivot_at(*row, col);
      v.set_depth(v.depth() + 1);
      j = 0;
      ++cobases;
      ++depth;
      ++result.stats.bases;
      if ((params.max_cobases && cobases >= *params.max_cobases) ||
          (params.max_depth && depth == *params.max_depth)) {
        unexplored = true;
        ++result.flagged_count;
        result.unexplored.push_back(v.key());
      } else {
        ++result.explored_count;
      }
      emit(node_record(v, unexplored));
    }
    if (depth > 0) {
      // backtrack step
      auto col = v.bland_column();
      if (!col) throw std::logic_error("backtrack from the root");
      auto row = v.lex_ratio_row(*col);
      if (!row) throw std::logic_error("objective unbounded below");
      const VarIndex leaving = v.basis()[*row];
      v.pivot_at(*row, *col);
      v.set_depth(v.depth() - 1);
      j = *v.col_of(leaving) + 1;
      --depth;
    }
  } while (!(depth == 0 && j == delta));

  return result;
}

ScanResult rs_scan(const Dictionary& start, const RecordSink& sink) {
  return brs_scan(start, BudgetParams::unbounded(), sink);
}

std::vector<OutputRecord> replay_partition(const Dictionary& root, const BudgetParams& params) {
  std::vector<OutputRecord> all;
  auto sink = [&](const OutputRecord& rec) { all.push_back(rec); };
  auto first = brs_scan(root, params, sink);
  std::vector<CobasisKey> stack = std::move(first.unexplored);
  const BudgetParams again{std::nullopt, params.max_cobases};
  while (!stack.empty()) {
    CobasisKey key = std::move(stack.back());
    stack.pop_back();
    auto more = brs_scan(restart_from(root, key), again, sink);
    stack.insert(stack.end(), more.unexplored.begin(), more.unexplored.end());
  }
  return all;
}

}  // namespace polyenum
