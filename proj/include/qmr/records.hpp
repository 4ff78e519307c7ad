#pragma once

#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qmr/error.hpp"
#include "qmr/givental.hpp"
#include "qmr/quasimap.hpp"

namespace qmr {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const IntersectionResult& r) {
  ordered_json j;
  j["N"] = r.query.N;
  j["k"] = r.query.k;
  j["d"] = r.query.d;
  j["j"] = r.query.j;
  j["regime"] = std::string(to_string(r.query.regime));
  if (r.query.regime == Regime::general) {
    j["m"] = r.query.m();
  } else {
    j["m"] = nullptr;
  }
  j["lhs"] = r.lhs.str();
  j["lhs_over_k"] = r.lhs_over_k.str();
  j["rhs"] = r.rhs.str();
  j["match"] = r.match;
  j["evaluator"] = std::string(to_string(r.evaluator));
  return j;
}

inline ordered_json to_json(const AnnihilationReport& r) {
  ordered_json j;
  j["N"] = r.N;
  j["k"] = r.k;
  j["j"] = r.j;
  j["e_max"] = r.e_max;
  j["formal"] = r.formal;
  j["annihilated"] = r.annihilated;
  j["residuals"] = ordered_json::array();
  for (const auto& res : r.residuals) {
    ordered_json e;
    e["a"] = res.a;
    e["e"] = res.e;
    e["coeff"] = res.coefficient.str();
    j["residuals"].push_back(std::move(e));
  }
  return j;
}

inline std::string results_csv(const std::vector<IntersectionResult>& rows) {
  std::ostringstream os;
  os << "N,k,d,j,regime,m,lhs,lhs_over_k,rhs,match,evaluator\n";
  for (const auto& r : rows) {
    os << r.query.N << ',' << r.query.k << ',' << r.query.d << ',' << r.query.j << ','
       << to_string(r.query.regime) << ',';
    if (r.query.regime == Regime::general) os << r.query.m();
    os << ',' << r.lhs << ',' << r.lhs_over_k << ',' << r.rhs << ','
       << (r.match ? "true" : "false") << ',' << to_string(r.evaluator) << '\n';
  }
  return os.str();
}

inline std::string results_text(const std::vector<IntersectionResult>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "N" << std::setw(4) << "k" << std::setw(4) << "d" << std::setw(4)
     << "j" << std::setw(9) << "regime" << std::setw(9) << "eval" << std::setw(24) << "w"
     << std::setw(24) << "w/k" << std::setw(24) << "hypergeom" << "match\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(4) << r.query.N << std::setw(4) << r.query.k << std::setw(4)
       << r.query.d << std::setw(4) << r.query.j << std::setw(9) << to_string(r.query.regime)
       << std::setw(9) << to_string(r.evaluator) << std::setw(24) << r.lhs.str() << std::setw(24)
       << r.lhs_over_k.str() << std::setw(24) << r.rhs.str() << (r.match ? "yes" : "NO") << '\n';
  }
  return os.str();
}

inline std::string reports_csv(const std::vector<AnnihilationReport>& rows) {
  std::ostringstream os;
  os << "N,k,j,e_max,formal,annihilated,residual_count\n";
  for (const auto& r : rows) {
    os << r.N << ',' << r.k << ',' << r.j << ',' << r.e_max << ',' << (r.formal ? "true" : "false")
       << ',' << (r.annihilated ? "true" : "false") << ',' << r.residuals.size() << '\n';
  }
  return os.str();
}

inline std::string reports_text(const std::vector<AnnihilationReport>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << "N=" << r.N << " k=" << r.k << " j=" << r.j << " e_max=" << r.e_max
       << (r.formal ? " (formal)" : "") << ": " << (r.annihilated ? "annihilated" : "RESIDUAL");
    for (const auto& res : r.residuals) {
      os << " [x^" << res.a << " e^" << res.e << "x: " << res.coefficient << "]";
    }
    os << '\n';
  }
  return os.str();
}

/// Append-only JSON-lines store of computed w values keyed by
/// (N, k, d, j, regime, evaluator).
class ResultCache {
 public:
  using Key = std::tuple<int, int, int, int, Regime, Evaluator>;

  ResultCache() = default;
  explicit ResultCache(std::string path) : path_(std::move(path)) { load(); }

  bool enabled() const { return !path_.empty(); }

  std::optional<Rational> lookup(const Query& q, Evaluator ev) const {
    std::lock_guard lock(mutex_);
    auto it = values_.find(key(q, ev));
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void store(const Query& q, Evaluator ev, const Rational& value) {
    if (!enabled()) return;
    std::lock_guard lock(mutex_);
    auto [it, inserted] = values_.try_emplace(key(q, ev), value);
    if (inserted) pending_.push_back(key(q, ev));
  }

  /// Appends the entries stored since the last flush.
  void flush() {
    if (!enabled()) return;
    std::lock_guard lock(mutex_);
    if (pending_.empty()) return;
    std::sort(pending_.begin(), pending_.end());
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache file " + path_);
    for (const auto& k : pending_) {
      ordered_json j;
      j["N"] = std::get<0>(k);
      j["k"] = std::get<1>(k);
      j["d"] = std::get<2>(k);
      j["j"] = std::get<3>(k);
      j["regime"] = std::string(to_string(std::get<4>(k)));
      j["evaluator"] = std::string(to_string(std::get<5>(k)));
      j["lhs"] = values_.at(k).str();
      out << j.dump() << '\n';
    }
    pending_.clear();
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return values_.size();
  }

 private:
  static Key key(const Query& q, Evaluator ev) { return {q.N, q.k, q.d, q.j, q.regime, ev}; }

  void load() {
    std::ifstream in(path_);
    if (!in) return;  // a missing cache is an empty cache
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        const Regime regime = j.at("regime").get<std::string>() == "fano" ? Regime::fano : Regime::general;
        const Evaluator ev =
            j.at("evaluator").get<std::string>() == "direct" ? Evaluator::direct : Evaluator::cascade;
        values_.emplace(Key{j.at("N").get<int>(), j.at("k").get<int>(), j.at("d").get<int>(),
                            j.at("j").get<int>(), regime, ev},
                        Rational(j.at("lhs").get<std::string>()));
      } catch (const std::exception& e) {
        throw std::runtime_error("corrupt cache line " + std::to_string(lineno) + " in " + path_ + ": " +
                                 e.what());
      }
    }
  }

  std::string path_;
  mutable std::mutex mutex_;
  std::map<Key, Rational> values_;
  std::vector<Key> pending_;
};

}  // namespace qmr
