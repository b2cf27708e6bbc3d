#include "polyenum/errors.hpp"
#include "polyenum/orchestrator.hpp"

namespace polyenum {

void WorkerRole::on_message(Rank from, Message msg, Outbox& out) {
  if (from != kMasterRank) throw ProtocolError("worker received a message from rank " + std::to_string(from));
  if (auto* p = std::get_if<InputProblem>(&msg)) {
    root_ = root_dictionary(parse_problem(p->text));
  } else if (auto* a = std::get_if<Assign>(&msg)) {
    if (!root_) throw ProtocolError("Assign before InputProblem");
    run_job(*a, out);
  } else if (std::holds_alternative<Terminate>(msg)) {
    done_ = true;
  } else {
    throw ProtocolError(std::string("worker cannot handle ") + std::string(message_name(msg)));
  }
}

void WorkerRole::run_job(const Assign& a, Outbox& out) {
  Dictionary start = [&] {
    try {
      return restart_from(*root_, a.job.key);
    } catch (const InvalidCobasis& e) {
      out.send(kMasterRank, Abort{std::string("job ") + a.job.key.to_string() + ": " + e.what()});
      done_ = true;
      throw;
    }
  }();

  OutputBatch batch;
  batch.job_id = a.job_id;
  batch.last = false;
  auto push_line = [&](const OutputRecord& rec) {
    std::string line = write_record(rec, RecordMode::plain);
    if (line.empty()) return;
    batch.lines.push_back(std::move(line));
    if (batch.lines.size() >= batch_lines_) {
      out.send(kConsumerRank, batch);
      batch.lines.clear();
    }
  };

  CountingStats delta;
  if (a.job.output_root) {
    OutputRecord rec = node_record(start, false);
    tally(delta, rec);
    ++delta.bases;
    push_line(rec);
  }
  ScanResult scan = brs_scan(start, BudgetParams{a.job.maxd, a.job.maxc}, push_line);
  delta += scan.stats;
  delta.jobs_done = 1;

  batch.delta = delta;
  batch.last = true;
  out.send(kConsumerRank, std::move(batch));
  out.send(kMasterRank, Unfinished{a.job_id, std::move(scan.unexplored), delta, scan.explored_count, scan.flagged_count});
  ++jobs_done_;
}

}  // namespace polyenum
