#include "polyenum/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "polyenum/errors.hpp"

namespace polyenum {

void Mailbox::push(Envelope e) {
  {
    std::lock_guard lock(mu_);
    if (shut_down_) return;
    queue_.push_back(std::move(e));
  }
  cv_.notify_one();
}

std::optional<Envelope> Mailbox::pop(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  cv_.wait_for(lock, timeout, [&] { return !queue_.empty() || shut_down_; });
  if (queue_.empty()) return std::nullopt;
  Envelope e = std::move(queue_.front());
  queue_.pop_front();
  return e;
}

void Mailbox::shut_down() {
  {
    std::lock_guard lock(mu_);
    shut_down_ = true;
    queue_.clear();
  }
  cv_.notify_all();
}

bool Mailbox::is_shut_down() const {
  std::lock_guard lock(mu_);
  return shut_down_;
}

namespace {

void check_edge(const Message& m, Rank from, Rank to, std::size_t num_ranks) {
  if (to >= num_ranks || to == from || !is_legal_edge(m, from, to)) {
    throw ProtocolError(std::string(message_name(m)) + " may not travel from rank " + std::to_string(from) +
                        " to rank " + std::to_string(to));
  }
}

}  // namespace

class InProcessEndpoint : public Endpoint {
 public:
  InProcessEndpoint(InProcessNetwork& net, Rank rank) : net_(net), rank_(rank) {}

  ~InProcessEndpoint() override {
    for (Rank r = 0; r < net_.size(); ++r) {
      if (r != rank_) net_.boxes_[r]->push(Envelope{rank_, Terminate{}, true});
    }
  }

  Rank rank() const override { return rank_; }

  void send(Rank to, const Message& m) override {
    check_edge(m, rank_, to, net_.size());
    net_.boxes_[to]->push(Envelope{rank_, m, false});
  }

  std::optional<Envelope> receive(std::chrono::milliseconds timeout) override {
    return net_.boxes_[rank_]->pop(timeout);
  }

  bool is_shut_down() const override { return net_.boxes_[rank_]->is_shut_down(); }

 private:
  InProcessNetwork& net_;
  Rank rank_;
};

InProcessNetwork::InProcessNetwork(std::size_t num_ranks) {
  for (std::size_t i = 0; i < num_ranks; ++i) boxes_.push_back(std::make_unique<Mailbox>());
}

std::unique_ptr<Endpoint> InProcessNetwork::endpoint(Rank rank) {
  if (rank >= boxes_.size()) throw std::out_of_range("rank out of range");
  return std::make_unique<InProcessEndpoint>(*this, rank);
}

void InProcessNetwork::shut_down() {
  for (auto& b : boxes_) b->shut_down();
}

// Frames.

std::string frame(const std::string& payload) {
  if (payload.size() > SocketEndpoint::kMaxFrame) throw ProtocolError("message exceeds frame limit");
  const auto n = static_cast<std::uint32_t>(payload.size());
  std::string out(4, '\0');
  out[0] = static_cast<char>((n >> 24) & 0xff);
  out[1] = static_cast<char>((n >> 16) & 0xff);
  out[2] = static_cast<char>((n >> 8) & 0xff);
  out[3] = static_cast<char>(n & 0xff);
  return out + payload;
}

namespace {

void write_all(int fd, const char* data, std::size_t size) {
  while (size > 0) {
    ssize_t w = ::send(fd, data, size, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("socket write failed: ") + std::strerror(errno));
    }
    data += w;
    size -= static_cast<std::size_t>(w);
  }
}

// Returns bytes read; fewer than size only at end of stream.
std::size_t read_all(int fd, char* data, std::size_t size) {
  std::size_t got = 0;
  while (got < size) {
    ssize_t r = ::recv(fd, data + got, size - got, 0);
    if (r == 0) break;
    if (r < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("socket read failed: ") + std::strerror(errno));
    }
    got += static_cast<std::size_t>(r);
  }
  return got;
}

}  // namespace

void write_frame(int fd, const std::string& payload) {
  const std::string f = frame(payload);
  write_all(fd, f.data(), f.size());
}

std::optional<std::string> read_frame(int fd) {
  unsigned char len[4];
  const std::size_t got = read_all(fd, reinterpret_cast<char*>(len), 4);
  if (got == 0) return std::nullopt;
  if (got < 4) throw ProtocolError("truncated frame header");
  const std::uint32_t n = (std::uint32_t{len[0]} << 24) | (std::uint32_t{len[1]} << 16) |
                          (std::uint32_t{len[2]} << 8) | std::uint32_t{len[3]};
  if (n > SocketEndpoint::kMaxFrame) throw ProtocolError("frame too large");
  std::string payload(n, '\0');
  if (read_all(fd, payload.data(), n) != n) throw ProtocolError("truncated frame");
  return payload;
}

// Sockets.

namespace {

sockaddr_in resolve(const PeerAddress& a) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(a.port);
  if (::inet_pton(AF_INET, a.host.c_str(), &addr.sin_addr) == 1) return addr;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(a.host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr) {
    throw ProtocolError("cannot resolve host '" + a.host + "'");
  }
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  ::freeaddrinfo(res);
  return addr;
}

[[noreturn]] void fail(const std::string& what) {
  throw ProtocolError(what + ": " + std::strerror(errno));
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

}  // namespace

SocketEndpoint::SocketEndpoint(Rank rank, std::size_t num_ranks, const PeerAddress& listen_on)
    : rank_(rank), num_ranks_(num_ranks) {
  if (rank >= num_ranks || num_ranks < 3) throw std::invalid_argument("bad rank layout");
  for (std::size_t i = 0; i < num_ranks; ++i) peers_.push_back(std::make_unique<Peer>());
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) fail("socket");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr = resolve(listen_on);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) fail("bind");
  if (::listen(listen_fd_, static_cast<int>(num_ranks)) != 0) fail("listen");
  socklen_t len = sizeof addr;
  if (::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) fail("getsockname");
  port_ = ntohs(addr.sin_port);
}

SocketEndpoint::~SocketEndpoint() { shut_down(); }

bool SocketEndpoint::talks_to(Rank other) const {
  if (other == rank_ || other >= num_ranks_) return false;
  return rank_ <= kConsumerRank || other <= kConsumerRank;
}

void SocketEndpoint::connect(const std::vector<PeerAddress>& peers, std::chrono::milliseconds timeout) {
  if (peers.size() != num_ranks_) throw std::invalid_argument("peer table size mismatch");
  const auto deadline = std::chrono::steady_clock::now() + timeout;

  for (Rank r = 0; r < rank_; ++r) {
    if (!talks_to(r)) continue;
    const sockaddr_in addr = resolve(peers[r]);
    int fd = -1;
    while (true) {
      fd = ::socket(AF_INET, SOCK_STREAM, 0);
      if (fd < 0) fail("socket");
      if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) == 0) break;
      ::close(fd);
      if (std::chrono::steady_clock::now() > deadline) fail("connect to rank " + std::to_string(r));
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    set_nodelay(fd);
    write_frame(fd, "hello " + std::to_string(rank_));
    peers_[r]->fd = fd;
  }

  std::size_t expected = 0;
  for (Rank r = rank_ + 1; r < num_ranks_; ++r) expected += talks_to(r);
  while (expected > 0) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    pollfd p{listen_fd_, POLLIN, 0};
    int ready = ::poll(&p, 1, static_cast<int>(std::max<long long>(0, left.count())));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) throw ProtocolError("timed out waiting for peers of rank " + std::to_string(rank_));
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) fail("accept");
    set_nodelay(fd);
    auto hello = read_frame(fd);
    Rank from = 0;
    if (!hello || hello->rfind("hello ", 0) != 0) {
      ::close(fd);
      throw ProtocolError("bad handshake");
    }
    try {
      from = std::stoul(hello->substr(6));
    } catch (const std::exception&) {
      ::close(fd);
      throw ProtocolError("bad handshake");
    }
    if (from <= rank_ || !talks_to(from) || peers_[from]->fd >= 0) {
      ::close(fd);
      throw ProtocolError("unexpected peer rank " + std::to_string(from));
    }
    peers_[from]->fd = fd;
    --expected;
  }

  for (Rank r = 0; r < num_ranks_; ++r) {
    if (peers_[r]->fd >= 0) start_reader(r);
  }
}

void SocketEndpoint::start_reader(Rank from) {
  Peer& peer = *peers_[from];
  peer.reader = std::thread([this, from, fd = peer.fd] {
    try {
      while (auto payload = read_frame(fd)) {
        inbox_.push(Envelope{from, decode(*payload), false});
      }
    } catch (const std::exception&) {
      // a broken stream is reported as a closed channel
    }
    if (!closing_) inbox_.push(Envelope{from, Terminate{}, true});
  });
}

void SocketEndpoint::send(Rank to, const Message& m) {
  check_edge(m, rank_, to, num_ranks_);
  Peer& peer = *peers_[to];
  if (peer.fd < 0) throw ProtocolError("no connection to rank " + std::to_string(to));
  const std::string payload = encode(m);
  std::lock_guard lock(peer.write_mu);
  write_frame(peer.fd, payload);
}

std::optional<Envelope> SocketEndpoint::receive(std::chrono::milliseconds timeout) { return inbox_.pop(timeout); }

void SocketEndpoint::interrupt() {
  closing_ = true;
  for (auto& p : peers_) {
    if (p->fd >= 0) ::shutdown(p->fd, SHUT_RDWR);
  }
  inbox_.shut_down();
}

void SocketEndpoint::shut_down() {
  std::lock_guard lock(shutdown_mu_);
  if (finished_) return;
  finished_ = true;
  closing_ = true;
  // Half-close so queued frames still reach the peers, then wait for each
  // peer to close its side.
  for (auto& p : peers_) {
    if (p->fd >= 0) ::shutdown(p->fd, SHUT_WR);
  }
  for (auto& p : peers_) {
    if (p->reader.joinable()) p->reader.join();
    if (p->fd >= 0) ::close(p->fd);
    p->fd = -1;
  }
  if (listen_fd_ >= 0) ::close(listen_fd_);
  listen_fd_ = -1;
  inbox_.shut_down();
}

}  // namespace polyenum
