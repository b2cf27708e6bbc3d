#include <ostream>

#include "polyenum/errors.hpp"
#include "polyenum/orchestrator.hpp"

namespace polyenum {

ConsumerRole::ConsumerRole(ConsumerConfig cfg, std::ostream& out) : cfg_(std::move(cfg)), sink_(out) {}

void ConsumerRole::write(const std::string& text) {
  sink_ << text;
  if (!sink_) throw SinkWriteFailure("output write failed");
}

void ConsumerRole::start(Outbox&) { write(write_output_header(cfg_.name, cfg_.output, cfg_.columns)); }

void ConsumerRole::on_message(Rank from, Message msg, Outbox& out) {
  if (auto* b = std::get_if<OutputBatch>(&msg)) {
    if (from <= kConsumerRank) throw ProtocolError("OutputBatch from a non-worker");
    std::string text;
    for (const auto& l : b->lines) {
      text += l;
      text += '\n';
    }
    write(text);
    lines_written_ += b->lines.size();
    if (b->last) {
      stats_ += b->delta;
      ++jobs_drained_;
    }
  } else if (auto* r = std::get_if<StatsReport>(&msg)) {
    stats_ += r->stats;
  } else if (auto* c = std::get_if<CheckpointNotice>(&msg)) {
    notice_jobs_ = c->jobs;
  } else if (auto* t = std::get_if<Terminate>(&msg)) {
    terminate_jobs_ = t->jobs;
  } else {
    throw ProtocolError(std::string("consumer cannot handle ") + std::string(message_name(msg)));
  }
  settle(out);
}

// Answers a pending notice or terminate once every job it covers has been
// drained.
void ConsumerRole::settle(Outbox& out) {
  if (notice_jobs_ && jobs_drained_ >= *notice_jobs_) {
    notice_jobs_.reset();
    sink_.flush();
    out.send(kMasterRank, StatsReport{stats_});
  }
  if (terminate_jobs_ && jobs_drained_ >= *terminate_jobs_ && !done_) {
    write("end\n" + write_summary(stats_, cfg_.output));
    sink_.flush();
    if (!sink_) throw SinkWriteFailure("output flush failed");
    done_ = true;
  }
}

}  // namespace polyenum
