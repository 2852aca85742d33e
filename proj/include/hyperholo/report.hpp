#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyperholo {

struct CheckRecord {
  std::string id;
  std::string anchor;  // which identity, in words
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_time = 0.0;        // seconds
  std::optional<double> value;   // measured quantity when the residual is relative to one
  std::string error;             // set when the check threw
};

class Report {
 public:
  explicit Report(std::string suite = {}) : suite_(std::move(suite)) {}

  const std::string& suite() const { return suite_; }
  const std::vector<CheckRecord>& records() const { return records_; }

  void add(CheckRecord r) {
    if (!ids_.insert(r.id).second) throw std::logic_error("duplicate check id: " + r.id);
    records_.push_back(std::move(r));
  }

  void merge(const Report& other) {
    for (const auto& r : other.records_) add(r);
  }

  const CheckRecord* find(const std::string& id) const {
    for (const auto& r : records_)
      if (r.id == id) return &r;
    return nullptr;
  }

  int passed() const {
    int n = 0;
    for (const auto& r : records_) n += r.pass ? 1 : 0;
    return n;
  }
  int failed() const { return static_cast<int>(records_.size()) - passed(); }
  bool all_pass() const { return failed() == 0; }

  /// Replaces every tolerance and recomputes pass flags.
  void override_tolerance(double tol) {
    for (auto& r : records_) {
      r.tolerance = tol;
      r.pass = r.error.empty() && std::isfinite(r.residual) && r.residual <= tol;
    }
  }

  nlohmann::ordered_json to_json(bool timing = true) const {
    nlohmann::ordered_json recs = nlohmann::ordered_json::array();
    for (const auto& r : records_) {
      nlohmann::ordered_json j;
      j["id"] = r.id;
      j["anchor"] = r.anchor;
      if (std::isfinite(r.residual))
        j["residual"] = r.residual;
      else
        j["residual"] = nullptr;
      j["tolerance"] = r.tolerance;
      j["pass"] = r.pass;
      if (r.value) j["value"] = *r.value;
      if (!r.error.empty()) j["error"] = r.error;
      if (timing) j["wall_time"] = r.wall_time;
      recs.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["schema"] = 1;
    out["suite"] = suite_;
    out["records"] = std::move(recs);
    out["summary"] = {{"total", records_.size()}, {"passed", passed()}, {"failed", failed()}, {"pass", all_pass()}};
    return out;
  }

 private:
  std::string suite_;
  std::vector<CheckRecord> records_;
  std::set<std::string> ids_;
};

/// What a check body returns: the residual, and optionally the quantity it was measured on.
struct Measurement {
  double residual;
  std::optional<double> value;
  Measurement(double r) : residual(r) {}  // NOLINT: plain residuals convert implicitly
  Measurement(double r, double v) : residual(r), value(v) {}
};

/// Runs `body`, times it, and records the outcome. Exceptions become failed records.
template <class F>
void run_check(Report& rep, std::string id, std::string anchor, double tol, F&& body) {
  CheckRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.tolerance = tol;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Measurement m = body();
    r.residual = m.residual;
    r.value = m.value;
    r.pass = std::isfinite(m.residual) && m.residual <= tol;
  } catch (const std::exception& e) {
    r.residual = std::nan("");
    r.error = e.what();
    r.pass = false;
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.add(std::move(r));
}

}  // namespace hyperholo
