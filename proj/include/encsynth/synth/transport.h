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

#ifndef ENCSYNTH_SYNTH_TRANSPORT_H_
#define ENCSYNTH_SYNTH_TRANSPORT_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "encsynth/common/bytes.h"
#include "encsynth/common/error.h"

namespace encsynth::synth {

// The peer went away or the link failed mid-session.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Ordered, reliable message channel. Messages are opaque byte strings.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void Send(std::span<const std::uint8_t> message) = 0;
  // Blocks for the next message; throws TransportError when the link is gone.
  virtual Bytes Receive() = 0;
};

// Request/response handler, e.g. a SynthServer.
using Handler = std::function<Bytes(std::span<const std::uint8_t> request)>;

// In-process channel: every Send is handed to `handler` synchronously and its
// reply is queued for the next Receive.
class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(Handler handler) : handler_(std::move(handler)) {}
  void Send(std::span<const std::uint8_t> message) override;
  Bytes Receive() override;

 private:
  Handler handler_;
  std::deque<Bytes> replies_;
};

// Stream socket with 4-byte big-endian length framing. Owns the descriptor.
class SocketTransport : public Transport {
 public:
  static constexpr std::uint32_t kMaxFrame = 1u << 30;

  explicit SocketTransport(int fd) : fd_(fd) {}
  ~SocketTransport() override;
  SocketTransport(const SocketTransport&) = delete;
  SocketTransport& operator=(const SocketTransport&) = delete;

  void Send(std::span<const std::uint8_t> message) override;
  Bytes Receive() override;
  void Close();

 private:
  int fd_;
};

std::unique_ptr<SocketTransport> ConnectTcp(const std::string& host, std::uint16_t port);

class TcpListener {
 public:
  // Port 0 picks an ephemeral port; see port().
  explicit TcpListener(std::uint16_t port, const std::string& bind_address = "127.0.0.1");
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<SocketTransport> Accept();

 private:
  int fd_;
  std::uint16_t port_;
};

// Reads request frames from `link` and answers them with `handler` until the
// peer disconnects.
void Serve(Transport& link, const Handler& handler);

// Records every message in both directions.
class RecordingTransport : public Transport {
 public:
  struct Entry {
    bool sent;
    Bytes message;
    bool operator==(const Entry&) const = default;
  };

  explicit RecordingTransport(Transport& inner) : inner_(inner) {}
  void Send(std::span<const std::uint8_t> message) override;
  Bytes Receive() override;
  const std::vector<Entry>& transcript() const { return transcript_; }

 private:
  Transport& inner_;
  std::vector<Entry> transcript_;
};

// Link that breaks after `fail_after_sends` messages: that message still
// reaches the peer but its reply is lost, and every later call throws
// TransportError until heal().
class FaultyTransport : public Transport {
 public:
  FaultyTransport(Transport& inner, std::uint64_t fail_after_sends)
      : inner_(inner), budget_(fail_after_sends) {}
  void Send(std::span<const std::uint8_t> message) override;
  Bytes Receive() override;
  void heal() { healed_ = true; }

 private:
  Transport& inner_;
  std::uint64_t budget_;
  bool healed_ = false;
  bool broken_ = false;
};

}  // namespace encsynth::synth

#endif  // ENCSYNTH_SYNTH_TRANSPORT_H_
