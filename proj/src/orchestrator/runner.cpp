#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "polyenum/errors.hpp"
#include "polyenum/orchestrator.hpp"

namespace polyenum {

namespace {

class EndpointOutbox : public Outbox {
 public:
  explicit EndpointOutbox(Endpoint& ep) : ep_(ep) {}
  void send(Rank to, Message m) override { ep_.send(to, m); }

 private:
  Endpoint& ep_;
};

ConsumerConfig consumer_config(const Problem& p) {
  return ConsumerConfig{p.name, p.rep == Representation::H ? Representation::V : Representation::H, p.n};
}

std::unique_ptr<MasterRole> make_master(const Problem& problem, const RunOptions& opts) {
  // Checks feasibility before anything is dispatched.
  const Dictionary root = root_dictionary(problem);
  const std::string text = write_problem(problem);
  if (opts.restart) return std::make_unique<MasterRole>(opts.master, text, *opts.restart);
  return std::make_unique<MasterRole>(opts.master, text, root.key());
}

// First failure wins; the rest are consequences of the shutdown.
class FailureSlot {
 public:
  bool set(std::exception_ptr e) {
    std::lock_guard lock(mu_);
    if (error_) return false;
    error_ = e;
    return true;
  }
  void rethrow() {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

}  // namespace

void drive(Role& role, Endpoint& ep, std::chrono::milliseconds poll) {
  EndpointOutbox out(ep);
  role.start(out);
  while (!role.done()) {
    if (ep.is_shut_down()) return;
    auto env = ep.receive(poll);
    if (env) {
      if (env->closed) {
        role.on_closed(env->from, out);
      } else {
        role.on_message(env->from, std::move(env->msg), out);
      }
    }
    if (!role.done()) role.on_tick(out);
  }
}

RunResult run_parallel(const Problem& problem, const RunOptions& opts, std::ostream& out) {
  auto master = make_master(problem, opts);
  const std::size_t workers = opts.master.workers;
  const std::size_t ranks = workers + 2;

  std::vector<std::unique_ptr<Role>> roles;
  ConsumerRole consumer(consumer_config(problem), out);
  std::vector<Role*> by_rank(ranks);
  by_rank[kMasterRank] = master.get();
  by_rank[kConsumerRank] = &consumer;
  for (std::size_t w = 1; w <= workers; ++w) {
    roles.push_back(std::make_unique<WorkerRole>(opts.batch_lines));
    by_rank[worker_rank(w)] = roles.back().get();
  }

  FailureSlot failure;
  std::unique_ptr<InProcessNetwork> net;
  std::vector<std::unique_ptr<SocketEndpoint>> sockets;
  std::function<void()> shut_down_all;

  if (opts.binding == Binding::in_process) {
    net = std::make_unique<InProcessNetwork>(ranks);
    shut_down_all = [&] { net->shut_down(); };
  } else {
    for (Rank r = 0; r < ranks; ++r) sockets.push_back(std::make_unique<SocketEndpoint>(r, ranks, PeerAddress{}));
    shut_down_all = [&] {
      for (auto& s : sockets) s->interrupt();
    };
  }

  std::vector<std::thread> threads;
  for (Rank r = 0; r < ranks; ++r) {
    threads.emplace_back([&, r] {
      try {
        if (net) {
          auto ep = net->endpoint(r);
          drive(*by_rank[r], *ep);
        } else {
          std::vector<PeerAddress> table;
          for (auto& s : sockets) table.push_back(PeerAddress{"127.0.0.1", s->port()});
          sockets[r]->connect(table);
          drive(*by_rank[r], *sockets[r]);
          sockets[r]->shut_down();
        }
      } catch (...) {
        if (failure.set(std::current_exception())) shut_down_all();
      }
    });
  }
  for (auto& t : threads) t.join();
  failure.rethrow();
  return RunResult{master->report(), consumer.stats()};
}

RunResult run_event_loop(const Problem& problem, const RunOptions& opts, std::ostream& out, std::uint64_t seed) {
  auto master = make_master(problem, opts);
  const std::size_t workers = opts.master.workers;
  const std::size_t ranks = workers + 2;

  ConsumerRole consumer(consumer_config(problem), out);
  std::vector<std::unique_ptr<WorkerRole>> worker_roles;
  std::vector<Role*> by_rank(ranks);
  by_rank[kMasterRank] = master.get();
  by_rank[kConsumerRank] = &consumer;
  for (std::size_t w = 1; w <= workers; ++w) {
    worker_roles.push_back(std::make_unique<WorkerRole>(opts.batch_lines));
    by_rank[worker_rank(w)] = worker_roles.back().get();
  }

  // One FIFO per ordered pair; the schedule picks which pair delivers next.
  std::map<std::pair<Rank, Rank>, std::deque<Message>> pending;

  struct LoopOutbox : Outbox {
    LoopOutbox(Rank s, std::size_t n, std::map<std::pair<Rank, Rank>, std::deque<Message>>* p)
        : self(s), ranks(n), pending(p) {}
    Rank self;
    std::size_t ranks;
    std::map<std::pair<Rank, Rank>, std::deque<Message>>* pending;
    void send(Rank to, Message m) override {
      if (to >= ranks || to == self || !is_legal_edge(m, self, to)) {
        throw ProtocolError(std::string(message_name(m)) + " may not travel from rank " + std::to_string(self) +
                            " to rank " + std::to_string(to));
      }
      (*pending)[{self, to}].push_back(std::move(m));
    }
  };
  std::vector<LoopOutbox> outboxes;
  for (Rank r = 0; r < ranks; ++r) outboxes.emplace_back(r, ranks, &pending);

  for (Rank r = 0; r < ranks; ++r) by_rank[r]->start(outboxes[r]);

  std::mt19937_64 rng(seed);
  std::vector<std::pair<Rank, Rank>> ready;
  while (true) {
    ready.clear();
    for (auto& [edge, q] : pending) {
      if (!q.empty() && !by_rank[edge.second]->done()) ready.push_back(edge);
    }
    if (ready.empty()) {
      if (master->done()) break;
      // time or flag triggers may still move the master
      master->on_tick(outboxes[kMasterRank]);
      bool any = false;
      for (auto& [edge, q] : pending) any = any || (!q.empty() && !by_rank[edge.second]->done());
      if (!any) break;
      continue;
    }
    const auto edge = ready[std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng)];
    Message m = std::move(pending[edge].front());
    pending[edge].pop_front();
    Role& to = *by_rank[edge.second];
    to.on_message(edge.first, std::move(m), outboxes[edge.second]);
    if (!master->done()) master->on_tick(outboxes[kMasterRank]);
  }
  for (Rank r = 0; r < ranks; ++r) {
    if (!by_rank[r]->done()) throw std::logic_error("event loop stalled with rank " + std::to_string(r) + " waiting");
  }
  return RunResult{master->report(), consumer.stats()};
}

CountingStats run_sequential(const Problem& problem, std::ostream& out) {
  const Dictionary root = root_dictionary(problem);
  const ConsumerConfig cfg = consumer_config(problem);
  out << write_output_header(cfg.name, cfg.output, cfg.columns);
  CountingStats stats;
  auto put = [&](const OutputRecord& rec) {
    std::string line = write_record(rec, RecordMode::plain);
    if (!line.empty()) out << line << '\n';
    if (!out) throw SinkWriteFailure("output write failed");
  };
  OutputRecord root_rec = node_record(root, false);
  tally(stats, root_rec);
  put(root_rec);
  auto scan = rs_scan(root, put);
  stats += scan.stats;
  stats.bases += 1;
  stats.jobs_done = 1;
  out << "end\n" << write_summary(stats, cfg.output);
  out.flush();
  if (!out) throw SinkWriteFailure("output flush failed");
  return stats;
}

}  // namespace polyenum
