#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace httplib {
class Server;
}

namespace poker {

// Error surfaced to clients as {code, message, violated_rule?}.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int http_status, std::string code, const std::string& message,
               std::optional<std::string> violated_rule = std::nullopt)
      : std::runtime_error(message),
        status_(http_status),
        code_(std::move(code)),
        violated_rule_(std::move(violated_rule)) {}

  int http_status() const { return status_; }
  const std::string& code() const { return code_; }
  const std::optional<std::string>& violated_rule() const { return violated_rule_; }
  nlohmann::json to_json() const;

 private:
  int status_;
  std::string code_;
  std::optional<std::string> violated_rule_;
};

struct ServiceOptions {
  std::optional<std::filesystem::path> store_dir;  // append-only event logs
  std::chrono::hours retention{0};                 // 0 keeps every session
  std::string default_advisor = "equity";          // policy spec
  std::chrono::milliseconds timeout{10000};        // advisor decision timeout
  std::uint64_t seed = 0;
};

struct Session;

// Live-hand sessions mirrored from posted events. All methods are safe to
// call concurrently; events of one session are applied in a total order.
class AdvisorService {
 public:
  explicit AdvisorService(ServiceOptions options = {});
  ~AdvisorService();

  // {session_id, constant_block, state}
  nlohmann::json create_session(const nlohmann::json& config);
  // Applies one event; returns the new snapshot. Rejected events leave the
  // session unchanged.
  nlohmann::json post_event(const std::string& id, const nlohmann::json& event);
  nlohmann::json get_state(const std::string& id) const;
  // request: {directive?, question?}
  nlohmann::json get_advice(const std::string& id, const nlohmann::json& request);
  // The prompt the advisor would receive now.
  std::string get_prompt(const std::string& id, const std::string& directive = {}) const;

  std::size_t session_count() const;
  // Sessions rebuilt from the store at construction.
  int replayed_sessions() const { return replayed_; }
  // Drops sessions idle longer than the retention period, with their logs.
  int prune();

 private:
  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> open_session(const nlohmann::json& config, const std::string& id);
  void persist(const Session& s, const nlohmann::json& line) const;
  void replay_store();
  std::string new_id();

  ServiceOptions options_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
  int replayed_ = 0;
};

// Registers the /v1 routes.
void install_routes(httplib::Server& server, AdvisorService& service);

}  // namespace poker
