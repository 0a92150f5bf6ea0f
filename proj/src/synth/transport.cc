/*
 * Copyright 2026 The encsynth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "encsynth/synth/transport.h"

#include <arpa/inet.h>
#include <cerrno>
#include <cstring>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

namespace encsynth::synth {
namespace {

std::string Errno(const std::string& what) { return what + ": " + std::strerror(errno); }

void WriteAll(int fd, const std::uint8_t* data, std::size_t n) {
  while (n > 0) {
    const ssize_t w = ::send(fd, data, n, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno("socket send"));
    }
    data += w;
    n -= static_cast<std::size_t>(w);
  }
}

// Returns false on a clean EOF before the first byte.
bool ReadAll(int fd, std::uint8_t* data, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t r = ::recv(fd, data + got, n - got, 0);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno("socket recv"));
    }
    if (r == 0) {
      if (got == 0) return false;
      throw TransportError("socket closed mid-frame");
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

}  // namespace

void InProcessTransport::Send(std::span<const std::uint8_t> message) {
  replies_.push_back(handler_(message));
}

Bytes InProcessTransport::Receive() {
  if (replies_.empty()) throw TransportError("in-process channel: no pending reply");
  Bytes out = std::move(replies_.front());
  replies_.pop_front();
  return out;
}

SocketTransport::~SocketTransport() { Close(); }

void SocketTransport::Close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void SocketTransport::Send(std::span<const std::uint8_t> message) {
  if (fd_ < 0) throw TransportError("socket is closed");
  if (message.size() > kMaxFrame) throw TransportError("frame exceeds the size limit");
  const std::uint32_t n = static_cast<std::uint32_t>(message.size());
  const std::uint8_t header[4] = {static_cast<std::uint8_t>(n >> 24),
                                  static_cast<std::uint8_t>(n >> 16),
                                  static_cast<std::uint8_t>(n >> 8), static_cast<std::uint8_t>(n)};
  WriteAll(fd_, header, 4);
  WriteAll(fd_, message.data(), message.size());
}

Bytes SocketTransport::Receive() {
  if (fd_ < 0) throw TransportError("socket is closed");
  std::uint8_t header[4];
  if (!ReadAll(fd_, header, 4)) throw TransportError("peer closed the connection");
  const std::uint32_t n = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                          (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
  if (n > kMaxFrame) throw TransportError("incoming frame exceeds the size limit");
  Bytes out(n);
  if (n > 0 && !ReadAll(fd_, out.data(), n)) throw TransportError("socket closed mid-frame");
  return out;
}

std::unique_ptr<SocketTransport> ConnectTcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw TransportError("resolve " + host + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw TransportError(Errno("connect " + host + ":" + service));
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return std::make_unique<SocketTransport>(fd);
}

TcpListener::TcpListener(std::uint16_t port, const std::string& bind_address) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw TransportError(Errno("socket"));
  const int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, bind_address.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw TransportError("bad bind address " + bind_address);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(fd_, 8) != 0) {
    const std::string msg = Errno("bind/listen");
    ::close(fd_);
    throw TransportError(msg);
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() { ::close(fd_); }

std::unique_ptr<SocketTransport> TcpListener::Accept() {
  int fd;
  do {
    fd = ::accept(fd_, nullptr, nullptr);
  } while (fd < 0 && errno == EINTR);
  if (fd < 0) throw TransportError(Errno("accept"));
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return std::make_unique<SocketTransport>(fd);
}

void Serve(Transport& link, const Handler& handler) {
  for (;;) {
    Bytes request;
    try {
      request = link.Receive();
    } catch (const TransportError&) {
      return;
    }
    link.Send(handler(request));
  }
}

void RecordingTransport::Send(std::span<const std::uint8_t> message) {
  transcript_.push_back({true, Bytes(message.begin(), message.end())});
  inner_.Send(message);
}

Bytes RecordingTransport::Receive() {
  Bytes m = inner_.Receive();
  transcript_.push_back({false, m});
  return m;
}

void FaultyTransport::Send(std::span<const std::uint8_t> message) {
  if (broken_ && !healed_) throw TransportError("injected transport fault");
  inner_.Send(message);
  if (!healed_ && budget_-- == 0) {
    broken_ = true;
    inner_.Receive();  // the lost reply
  }
}

Bytes FaultyTransport::Receive() {
  if (broken_ && !healed_) throw TransportError("injected transport fault");
  return inner_.Receive();
}

}  // namespace encsynth::synth
