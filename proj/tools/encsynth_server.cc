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

// Untrusted synthesis server. Links evaluators and evaluation keys only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "encsynth/synth/server.h"
#include "encsynth/synth/transport.h"

int main(int argc, char** argv) {
  CLI::App app{"encsynth_server: encrypted Z-learning server"};
  int port = 7070;
  std::string bind = "127.0.0.1";
  std::string port_file;
  bool once = false;
  app.add_option("--port", port, "TCP port (0 picks a free one)")
      ->envname("ENCSYNTH_PORT")
      ->check(CLI::Range(0, 65535));
  app.add_option("--bind", bind, "IPv4 address to listen on")->envname("ENCSYNTH_BIND");
  app.add_option("--port-file", port_file, "write the bound port here once listening");
  app.add_flag("--once", once, "exit after the first connection closes");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  using namespace encsynth::synth;
  try {
    TcpListener listener(static_cast<std::uint16_t>(port), bind);
    if (!port_file.empty()) {
      std::ofstream(port_file) << listener.port() << "\n";
    }
    std::fprintf(stderr, "listening on %s:%u\n", bind.c_str(), listener.port());
    SynthServer server;
    std::mutex mu;
    const Handler handler = [&](std::span<const std::uint8_t> request) {
      std::lock_guard<std::mutex> lock(mu);
      return server.Handle(request);
    };
    if (once) {
      auto conn = listener.Accept();
      Serve(*conn, handler);
      return 0;
    }
    for (;;) {
      std::shared_ptr<SocketTransport> conn = listener.Accept();
      std::thread([conn, &handler] { Serve(*conn, handler); }).detach();
    }
  } catch (const TransportError& e) {
    std::cerr << "transport: " << e.what() << "\n";
    return 4;
  }
}
