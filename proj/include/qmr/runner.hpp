#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qmr/error.hpp"
#include "qmr/givental.hpp"
#include "qmr/quasimap.hpp"
#include "qmr/records.hpp"

namespace qmr {

/// Exit statuses of the command-line front end.
enum class ExitStatus : int { ok = 0, mismatch = 1, usage = 2, engine = 3, io = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inclusive integer range written "a", "a..b" or a comma list of those.
struct IntRange {
  std::vector<int> values;

  static IntRange parse(const std::string& text) {
    IntRange r;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const auto dots = part.find("..");
      try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
          r.values.push_back(std::stoi(part, &used));
          if (used != part.size()) throw std::invalid_argument(part);
        } else {
          const std::string lo_s = part.substr(0, dots);
          const std::string hi_s = part.substr(dots + 2);
          const int lo = std::stoi(lo_s, &used);
          if (used != lo_s.size()) throw std::invalid_argument(part);
          const int hi = std::stoi(hi_s, &used);
          if (used != hi_s.size()) throw std::invalid_argument(part);
          if (hi < lo) throw UsageError("empty range '" + part + "'");
          for (int v = lo; v <= hi; ++v) r.values.push_back(v);
        }
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception&) {
        throw UsageError("cannot parse integer range '" + text + "'");
      }
    }
    if (r.values.empty()) throw UsageError("empty range '" + text + "'");
    std::sort(r.values.begin(), r.values.end());
    r.values.erase(std::unique(r.values.begin(), r.values.end()), r.values.end());
    return r;
  }

  int max() const { return values.back(); }
};

enum class Command { compute, verify, givental, bench };
enum class EvaluatorChoice { direct, cascade, both };
enum class Format { json, csv, text };

struct RunConfig {
  Command command = Command::compute;
  IntRange N{{2}};
  std::optional<IntRange> k;  // default depends on regime
  IntRange d{{1}};
  IntRange j{{0}};            // compute, givental (default 0..N-2 there)
  bool j_given = false;
  int jmax = 0;               // verify, bench
  int e_max = 4;              // givental
  std::optional<Regime> regime;
  EvaluatorChoice evaluator = EvaluatorChoice::both;
  Format format = Format::json;
  std::string output;         // empty: stdout
  int workers = 1;
  std::string cache;          // empty: no cache
};

/// Default worker count from QMR_WORKERS, else the hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("QMR_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

/// Runs fn(0..count-1) on `workers` threads; each index is claimed once.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= count) return;
      try {
        fn(idx);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace detail {

struct Family {
  int N;
  int k;
  int d;
};

inline std::vector<Family> expand_families(const RunConfig& cfg) {
  std::vector<Family> out;
  for (int N : cfg.N.values) {
    if (N < 2) throw UsageError("N must be >= 2");
    std::vector<int> ks;
    if (cfg.k) {
      ks = cfg.k->values;
    } else if (cfg.regime == Regime::general) {
      for (int k = N; k <= N + 2; ++k) ks.push_back(k);
    } else {
      for (int k = 1; k <= N - 1; ++k) ks.push_back(k);
    }
    for (int k : ks) {
      if (k < 1) throw UsageError("k must be >= 1");
      if (cfg.regime == Regime::fano && k >= N) {
        throw UsageError("fano regime requires k < N (got N=" + std::to_string(N) + ", k=" + std::to_string(k) + ")");
      }
      if (cfg.regime == Regime::general && k < N) {
        throw UsageError("general regime requires k >= N (got N=" + std::to_string(N) + ", k=" + std::to_string(k) + ")");
      }
      for (int d : cfg.d.values) {
        if (d < 1) throw UsageError("d must be >= 1");
        out.push_back({N, k, d});
      }
    }
  }
  return out;
}

inline std::vector<Evaluator> evaluators(EvaluatorChoice c) {
  switch (c) {
    case EvaluatorChoice::direct: return {Evaluator::direct};
    case EvaluatorChoice::cascade: return {Evaluator::cascade};
    case EvaluatorChoice::both: return {Evaluator::direct, Evaluator::cascade};
  }
  return {};
}

// All requested levels of one (N, k, d) family for one evaluator.
inline std::vector<Rational> family_values(const Family& f, const std::vector<int>& levels, Evaluator ev,
                                           ResultCache& cache) {
  const Query base = Query::make(f.N, f.k, f.d, 0);
  std::vector<std::optional<Rational>> got;
  bool missing = false;
  for (int j : levels) {
    got.push_back(cache.lookup(base.with_j(j), ev));
    missing = missing || !got.back();
  }
  if (missing) {
    if (ev == Evaluator::direct) {
      for (std::size_t t = 0; t < levels.size(); ++t) {
        if (!got[t]) {
          got[t] = eval_direct(base.with_j(levels[t]));
          cache.store(base.with_j(levels[t]), ev, *got[t]);
        }
      }
    } else {
      const int jmax = *std::max_element(levels.begin(), levels.end());
      const EpsSeries series = eval_cascade(base, jmax);
      for (int j = 0; j <= jmax; ++j) cache.store(base.with_j(j), ev, series.coefficient(j));
      for (std::size_t t = 0; t < levels.size(); ++t) got[t] = series.coefficient(levels[t]);
    }
  }
  std::vector<Rational> out;
  for (auto& g : got) out.push_back(*g);
  return out;
}

inline void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.output.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(cfg.output, std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open output file " + cfg.output);
  out << payload;
  if (!out) throw std::ios_base::failure("write failed for " + cfg.output);
}

inline std::string render(const RunConfig& cfg, const std::vector<IntersectionResult>& rows) {
  switch (cfg.format) {
    case Format::json: {
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows) arr.push_back(to_json(r));
      return arr.dump(2) + "\n";
    }
    case Format::csv: return results_csv(rows);
    case Format::text: return results_text(rows);
  }
  return {};
}

}  // namespace detail

/// compute / verify: evaluates the grid and returns deterministically
/// ordered records (by N, k, d, j, evaluator).
inline std::vector<IntersectionResult> compute_grid(const RunConfig& cfg, ResultCache& cache) {
  const auto families = detail::expand_families(cfg);
  std::vector<int> levels;
  std::vector<Evaluator> evs;
  if (cfg.command == Command::verify) {
    for (int j = 0; j <= cfg.jmax; ++j) levels.push_back(j);
    evs = {Evaluator::direct, Evaluator::cascade};
  } else {
    levels = cfg.j.values;
    evs = detail::evaluators(cfg.evaluator);
  }
  if (levels.front() < 0) throw UsageError("j must be >= 0");

  std::vector<std::vector<IntersectionResult>> per_family(families.size());
  parallel_for(families.size(), cfg.workers, [&](std::size_t idx) {
    const auto& f = families[idx];
    const Query base = Query::make(f.N, f.k, f.d, 0);
    const EpsSeries rhs = hypergeom_series(f.N, f.k, f.d, levels.back());
    const Rational k(f.k);
    std::vector<std::vector<Rational>> values;
    for (Evaluator ev : evs) values.push_back(detail::family_values(f, levels, ev, cache));
    auto& rows = per_family[idx];
    for (std::size_t t = 0; t < levels.size(); ++t) {
      const Rational expected = rhs.coefficient(levels[t]);
      bool agree = true;
      for (const auto& v : values) agree = agree && v[t] == values.front()[t];
      for (std::size_t e = 0; e < evs.size(); ++e) {
        const Rational& w = values[e][t];
        const bool match = (w / k == expected) && (cfg.command != Command::verify || agree);
        rows.push_back({base.with_j(levels[t]), w, w / k, expected, match, evs[e]});
      }
    }
  });
  cache.flush();

  std::vector<IntersectionResult> out;
  for (auto& rows : per_family) out.insert(out.end(), rows.begin(), rows.end());
  std::stable_sort(out.begin(), out.end(), [](const IntersectionResult& a, const IntersectionResult& b) {
    return std::tie(a.query.N, a.query.k, a.query.d, a.query.j, a.evaluator) <
           std::tie(b.query.N, b.query.k, b.query.d, b.query.j, b.evaluator);
  });
  return out;
}

inline std::vector<AnnihilationReport> givental_grid(const RunConfig& cfg) {
  std::vector<std::tuple<int, int, int>> jobs;
  for (int N : cfg.N.values) {
    if (N < 2) throw UsageError("N must be >= 2");
    std::vector<int> ks;
    if (cfg.k) {
      ks = cfg.k->values;
    } else {
      for (int k = 1; k <= N - 1; ++k) ks.push_back(k);
    }
    for (int k : ks) {
      if (k < 1) throw UsageError("k must be >= 1");
      if (cfg.regime == Regime::fano && k >= N) throw UsageError("fano regime requires k < N");
      if (cfg.regime == Regime::general && k < N) throw UsageError("general regime requires k >= N");
      std::vector<int> js;
      if (cfg.j_given) {
        js = cfg.j.values;
      } else {
        for (int j = 0; j <= N - 2; ++j) js.push_back(j);
      }
      for (int j : js) {
        if (j < 0 || j > N - 2) throw UsageError("j must lie in 0..N-2");
        jobs.emplace_back(N, k, j);
      }
    }
  }
  if (cfg.e_max < 1) throw UsageError("e_max must be >= 1");
  std::vector<AnnihilationReport> out(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t idx) {
    const auto [N, k, j] = jobs[idx];
    out[idx] = verify_annihilation(N, k, j, cfg.e_max);
  });
  return out;
}

struct BenchRow {
  int N, k, d, J;
  double t_direct_total;
  double t_cascade;
};

/// Times per-level direct residues against one cascade pass. The two
/// coefficient lists must agree before any timing is reported.
inline std::vector<BenchRow> bench_grid(const RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (const auto& f : detail::expand_families(cfg)) {
    const Query base = Query::make(f.N, f.k, f.d, 0);
    const auto t0 = clock::now();
    std::vector<Rational> direct;
    for (int j = 0; j <= cfg.jmax; ++j) direct.push_back(eval_direct(base.with_j(j)));
    const auto t1 = clock::now();
    const EpsSeries cascade = eval_cascade(base, cfg.jmax);
    const auto t2 = clock::now();
    for (int j = 0; j <= cfg.jmax; ++j) {
      if (cascade.coefficient(j) != direct[j]) {
        throw Error(ErrorKind::internal_corruption,
                    "direct and cascade disagree at N=" + std::to_string(f.N) + " k=" + std::to_string(f.k) +
                        " d=" + std::to_string(f.d) + " j=" + std::to_string(j));
      }
    }
    rows.push_back({f.N, f.k, f.d, cfg.jmax, std::chrono::duration<double>(t1 - t0).count(),
                    std::chrono::duration<double>(t2 - t1).count()});
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "N,k,d,J,t_direct_total,t_cascade,speedup\n";
  os << std::setprecision(6) << std::scientific;
  for (const auto& r : rows) {
    const double speedup = r.t_cascade > 0 ? r.t_direct_total / r.t_cascade : 0.0;
    os << r.N << ',' << r.k << ',' << r.d << ',' << r.J << ',' << r.t_direct_total << ',' << r.t_cascade
       << ',' << std::fixed << std::setprecision(3) << speedup << std::scientific << std::setprecision(6)
       << '\n';
  }
  return os.str();
}

/// Executes one configuration; diagnostics go to `err`.
inline ExitStatus run(const RunConfig& cfg, std::ostream& err = std::cerr) {
  try {
    switch (cfg.command) {
      case Command::compute:
      case Command::verify: {
        ResultCache cache(cfg.cache);
        const auto rows = compute_grid(cfg, cache);
        detail::emit(cfg, detail::render(cfg, rows));
        const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.match; });
        return all ? ExitStatus::ok : ExitStatus::mismatch;
      }
      case Command::givental: {
        const auto reports = givental_grid(cfg);
        std::string payload;
        if (cfg.format == Format::json) {
          ordered_json arr = ordered_json::array();
          for (const auto& r : reports) arr.push_back(to_json(r));
          payload = arr.dump(2) + "\n";
        } else if (cfg.format == Format::csv) {
          payload = reports_csv(reports);
        } else {
          payload = reports_text(reports);
        }
        detail::emit(cfg, payload);
        const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.annihilated; });
        return all ? ExitStatus::ok : ExitStatus::mismatch;
      }
      case Command::bench: {
        detail::emit(cfg, bench_csv(bench_grid(cfg)));
        return ExitStatus::ok;
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return ExitStatus::usage;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::invalid_query) {
      err << "usage error: " << e.what() << "\n";
      return ExitStatus::usage;
    }
    err << "engine error: " << e.what() << "\n";
    return ExitStatus::engine;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << "\n";
    return ExitStatus::io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitStatus::io;
  }
  return ExitStatus::ok;
}

}  // namespace qmr
