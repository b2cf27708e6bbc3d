#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "polyenum/messages.hpp"

namespace polyenum {

/// A delivered message, or (closed = true) notice that the channel from
/// `from` has gone away.
struct Envelope {
  Rank from = 0;
  Message msg;
  bool closed = false;
};

/// Thread-safe FIFO of envelopes for one rank.
class Mailbox {
 public:
  void push(Envelope e);
  /// Waits up to timeout. Returns nullopt on timeout or once shut down and empty.
  std::optional<Envelope> pop(std::chrono::milliseconds timeout);
  void shut_down();
  bool is_shut_down() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Envelope> queue_;
  bool shut_down_ = false;
};

/// One rank's view of the network. Delivery is reliable and in order per
/// sender/receiver pair. Sending along an edge the protocol does not allow
/// throws ProtocolError.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual Rank rank() const = 0;
  virtual void send(Rank to, const Message& m) = 0;
  virtual std::optional<Envelope> receive(std::chrono::milliseconds timeout) = 0;
  /// True once the network was torn down; receive() will not deliver more.
  virtual bool is_shut_down() const = 0;
};

/// Message channels between threads of one process.
class InProcessNetwork {
 public:
  explicit InProcessNetwork(std::size_t num_ranks);

  std::size_t size() const { return boxes_.size(); }
  /// The endpoint for `rank`. Destroying it tells every other rank that the
  /// channel closed.
  std::unique_ptr<Endpoint> endpoint(Rank rank);
  void shut_down();

 private:
  friend class InProcessEndpoint;
  std::vector<std::unique_ptr<Mailbox>> boxes_;
};

struct PeerAddress {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
};

/// Length-prefixed frames over TCP. Each frame is a 4-byte big-endian
/// length followed by the encoded message.
///
/// Rank r connects to the peers below it that it talks to and accepts the
/// ones above it: the master accepts everyone, the consumer connects to the
/// master and accepts workers, workers connect to both.
class SocketEndpoint : public Endpoint {
 public:
  static constexpr std::uint32_t kMaxFrame = 64u << 20;

  /// Opens the listening socket (port 0 picks a free port).
  SocketEndpoint(Rank rank, std::size_t num_ranks, const PeerAddress& listen_on);
  ~SocketEndpoint() override;

  SocketEndpoint(const SocketEndpoint&) = delete;
  SocketEndpoint& operator=(const SocketEndpoint&) = delete;

  std::uint16_t port() const { return port_; }

  /// Builds the connections. `peers[r]` is the listening address of rank r.
  /// Blocks until every expected peer is connected or the timeout expires.
  void connect(const std::vector<PeerAddress>& peers,
               std::chrono::milliseconds timeout = std::chrono::seconds(30));

  Rank rank() const override { return rank_; }
  void send(Rank to, const Message& m) override;
  std::optional<Envelope> receive(std::chrono::milliseconds timeout) override;
  bool is_shut_down() const override { return inbox_.is_shut_down(); }
  /// Graceful close: half-closes every connection, then waits for the peers.
  void shut_down();
  /// Abortive close for error paths; wakes readers and the inbox.
  void interrupt();

 private:
  struct Peer {
    int fd = -1;
    std::mutex write_mu;
    std::thread reader;
  };

  bool talks_to(Rank other) const;
  void start_reader(Rank from);

  Rank rank_;
  std::size_t num_ranks_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::vector<std::unique_ptr<Peer>> peers_;
  Mailbox inbox_;
  std::atomic<bool> closing_{false};
  std::mutex shutdown_mu_;
  bool finished_ = false;
};

/// Frame helpers shared by the socket binding and its tests.
std::string frame(const std::string& payload);
void write_frame(int fd, const std::string& payload);
/// Returns nullopt on a clean end of stream before any byte of a frame.
std::optional<std::string> read_frame(int fd);

}  // namespace polyenum
