// Shared helpers for the test binaries.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "poker/hand_history.hpp"
#include "poker/rng.hpp"

#ifndef POKER_TEST_DATA
#error "POKER_TEST_DATA must point at tests/data"
#endif

namespace testing_support {

inline std::filesystem::path data_dir() { return POKER_TEST_DATA; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() / "corpus"))
    if (e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

struct Corpus {
  std::vector<poker::ParsedHand> hands;
  std::vector<poker::Diagnostic> diagnostics;
};

inline Corpus load_corpus() {
  Corpus c;
  for (const auto& p : corpus_files()) {
    poker::ParsedFile f = poker::parse_path(p);
    for (auto& h : f.hands) c.hands.push_back(std::move(h));
    for (auto& d : f.diagnostics) c.diagnostics.push_back(std::move(d));
  }
  return c;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    poker::Rng rng(static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
    path_ = std::filesystem::temp_directory_path() /
            ("poker_test_" + std::to_string(rng.next() % 1000000000) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// httplib server on an ephemeral loopback port, stopped on destruction.
class LocalServer {
 public:
  explicit LocalServer(const std::function<void(httplib::Server&)>& setup) {
    setup(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("cannot bind a loopback port");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  LocalServer(const LocalServer&) = delete;
  LocalServer& operator=(const LocalServer&) = delete;

  int port() const { return port_; }
  std::string url(const std::string& path = "") const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

// Completion endpoint that answers "raise to 0.5" when the prompt asks for
// aggression and "call" otherwise, after an optional delay.
inline void install_stub_advisor(httplib::Server& s, std::chrono::milliseconds delay = std::chrono::milliseconds(0),
                                 std::atomic<int>* calls = nullptr) {
  s.Post("/complete", [delay, calls](const httplib::Request& req, httplib::Response& res) {
    if (calls) ++*calls;
    if (delay.count() > 0) std::this_thread::sleep_for(delay);
    auto body = nlohmann::json::parse(req.body);
    std::string prompt = body.at("prompt").get<std::string>();
    std::string text = prompt.find("aggressive") != std::string::npos ? "You should raise to 0.5." : "You should call.";
    res.set_content(nlohmann::json{{"text", text}}.dump(), "application/json");
  });
}

}  // namespace testing_support
