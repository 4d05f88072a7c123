// Copyright 2026 The elicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "elicit/engine.hpp"
#include "elicit/scenario.hpp"
#include "elicit/session_log.hpp"

namespace elicit::service {

struct ServiceConfig {
  std::string data_dir = "elicit-data";
  double match_threshold = kDefaultMatchThreshold;
  std::shared_ptr<const FeedbackCatalog> catalog;  // builtin when null
  SimilarityProvider similarity;                   // token cosine when empty
  std::function<Timestamp()> clock;                // wall clock ms when empty
  std::vector<std::string> scenario_files;         // preloaded, not copied to data_dir
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct RecoveryNote {
  std::string session_id;
  bool resumed = false;
  std::size_t repaired_events = 0;
  std::string message;
};

// Transport-independent request handling over the session store. Every
// session lives in <data_dir>/sessions/<id>.jsonl; uploaded scenarios in
// <data_dir>/scenarios/<id>.json. Existing logs are replayed on
// construction.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(std::string_view method, std::string_view path, std::string_view body);

  const std::vector<RecoveryNote>& recovery_notes() const { return recovery_; }
  const ServiceConfig& config() const { return config_; }

 private:
  struct Entry;

  Response upload_scenario(std::string_view body);
  Response list_scenarios() const;
  Response create_session(std::string_view body);
  Response get_state(const std::string& id);
  Response post_choice(const std::string& id, std::string_view body);
  Response post_attempt(const std::string& id, std::string_view body);
  Response get_summary(const std::string& id);
  Response end_session(const std::string& id);
  Response get_log(const std::string& id);

  std::shared_ptr<Entry> find_session(const std::string& id) const;
  void persist(Entry& entry);
  Timestamp now_for(const Session& session) const;
  void recover_sessions();

  ServiceConfig config_;
  mutable std::shared_mutex scenarios_mutex_;
  std::map<std::string, std::shared_ptr<const Scenario>> scenarios_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_session_number_ = 1;
  std::vector<RecoveryNote> recovery_;
};

// Blocking HTTP front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Serves until stop(). Returns false if the socket failed.
  bool listen_after_bind();
  void stop();
  bool wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace elicit::service
