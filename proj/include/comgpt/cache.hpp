#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "comgpt/hash.hpp"
#include "comgpt/oracle.hpp"

namespace comgpt {

/// Content-addressed response store: one JSON file per (model, prompt)
/// pair, named by the request hash. The stored request is compared on
/// lookup, so a hash collision degrades to a miss instead of returning a
/// wrong response.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::optional<std::string> lookup(const std::string& model, const std::string& system_text,
                                    const std::string& user_text) const {
    std::shared_lock lock(mutex_);
    auto path = entry_path(model, system_text, user_text);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json record;
    try {
      in >> record;
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
    if (record.value("model", "") != model || record.value("system", "") != system_text ||
        record.value("user", "") != user_text)
      return std::nullopt;
    if (!record.contains("response") || !record["response"].is_string()) return std::nullopt;
    return record["response"].get<std::string>();
  }

  void store(const std::string& model, const std::string& system_text,
             const std::string& user_text, const std::string& response) {
    std::unique_lock lock(mutex_);
    nlohmann::json record{
        {"model", model},
        {"system", system_text},
        {"user", user_text},
        {"response", response},
        {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count()},
    };
    auto path = entry_path(model, system_text, user_text);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << record.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path entry_path(const std::string& model, const std::string& system_text,
                                   const std::string& user_text) const {
    std::string key = model;
    key.push_back('\x1e');
    key += system_text;
    key.push_back('\x1e');
    key += user_text;
    return dir_ / (fnv1a64_hex(key) + ".json");
  }

  std::filesystem::path dir_;
  mutable std::shared_mutex mutex_;
};

/// Counts calls against a configurable ceiling; 0 means unlimited.
/// Cached responses never pass through here, so resumed experiments only
/// pay for what they actually send.
class CallBudget {
 public:
  explicit CallBudget(std::int64_t limit = 0) : limit_(limit) {}

  void charge() {
    std::lock_guard lock(mutex_);
    if (limit_ > 0 && used_ >= limit_)
      throw BudgetExhausted("oracle call budget of " + std::to_string(limit_) + " exhausted");
    ++used_;
  }

  std::int64_t used() const {
    std::lock_guard lock(mutex_);
    return used_;
  }

 private:
  std::int64_t limit_;
  std::int64_t used_ = 0;
  mutable std::mutex mutex_;
};

/// Charges the budget before delegating.
class BudgetedBackend : public ChatBackend {
 public:
  BudgetedBackend(std::shared_ptr<ChatBackend> inner, std::shared_ptr<CallBudget> budget)
      : inner_(std::move(inner)), budget_(std::move(budget)) {}

  std::string complete(const std::string& system_text, const std::string& user_text) override {
    if (budget_) budget_->charge();
    return inner_->complete(system_text, user_text);
  }

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::shared_ptr<CallBudget> budget_;
};

/// Serves repeats from the store and forwards misses.
class CachingBackend : public ChatBackend {
 public:
  CachingBackend(std::shared_ptr<ChatBackend> inner, std::shared_ptr<ResponseCache> cache,
                 std::string model)
      : inner_(std::move(inner)), cache_(std::move(cache)), model_(std::move(model)) {}

  std::string complete(const std::string& system_text, const std::string& user_text) override {
    if (auto hit = cache_->lookup(model_, system_text, user_text)) return *hit;
    std::string response = inner_->complete(system_text, user_text);
    cache_->store(model_, system_text, user_text, response);
    return response;
  }

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::shared_ptr<ResponseCache> cache_;
  std::string model_;
};

}  // namespace comgpt
