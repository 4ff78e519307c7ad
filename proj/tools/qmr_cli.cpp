// qmr: intersection numbers of quasimap moduli by iterated residues.
//
//   qmr compute  --N 2 --k 1 --d 1 --j 1 --evaluator direct
//   qmr verify   --regime fano --N 2..4 --d 1..2 --jmax 3
//   qmr givental --N 3..5 --emax 4
//   qmr bench    --N 6 --k 1 --d 2 --jmax 6

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qmr/runner.hpp"

namespace {

struct Flags {
  std::string N = "2";
  std::string k;
  std::string d = "1";
  std::string j;
  int jmax = 0;
  int emax = 4;
  std::string regime;
  std::string evaluator = "both";
  std::string format = "json";
  std::string out;
  int workers = 0;
  std::string cache;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--N", f.N, "ambient dimension N (CP^{N-1}); int, a..b or list");
  cmd->add_option("--k", f.k, "hypersurface degree; default 1..N-1 (fano) or N..N+2 (general)");
  cmd->add_option("--regime", f.regime, "fano (k < N) or general (k >= N)")
      ->check(CLI::IsMember({"fano", "general"}));
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("-o,--out", f.out, "output file (default stdout)");
  cmd->add_option("--workers", f.workers, "worker threads (default $QMR_WORKERS or all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasimap intersection numbers by iterated residues"};
  app.require_subcommand(1);
  Flags f;

  auto* compute = app.add_subcommand("compute", "evaluate w(...) for the given parameters");
  add_common(compute, f);
  compute->add_option("--d", f.d, "map degree");
  compute->add_option("--j", f.j, "descendant level(s)")->required();
  compute->add_option("--evaluator", f.evaluator, "direct, cascade or both")
      ->check(CLI::IsMember({"direct", "cascade", "both"}));
  compute->add_option("--cache", f.cache, "JSON-lines result cache");

  auto* verify = app.add_subcommand("verify", "check w/k against the hypergeometric coefficients");
  add_common(verify, f);
  verify->add_option("--d", f.d, "map degree");
  verify->add_option("--jmax", f.jmax, "largest descendant level")->required();
  verify->add_option("--cache", f.cache, "JSON-lines result cache");

  auto* givental = app.add_subcommand("givental", "check the Givental operator kills w_j(x)");
  add_common(givental, f);
  givental->add_option("--j", f.j, "solution index (default 0..N-2)");
  givental->add_option("--emax", f.emax, "exponential truncation degree");

  auto* bench = app.add_subcommand("bench", "time direct residues against the eps cascade");
  add_common(bench, f);
  bench->add_option("--d", f.d, "map degree");
  bench->add_option("--jmax", f.jmax, "largest descendant level")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(qmr::ExitStatus::usage);
  }

  qmr::RunConfig cfg;
  try {
    if (compute->parsed()) cfg.command = qmr::Command::compute;
    if (verify->parsed()) cfg.command = qmr::Command::verify;
    if (givental->parsed()) cfg.command = qmr::Command::givental;
    if (bench->parsed()) cfg.command = qmr::Command::bench;
    cfg.N = qmr::IntRange::parse(f.N);
    if (!f.k.empty()) cfg.k = qmr::IntRange::parse(f.k);
    cfg.d = qmr::IntRange::parse(f.d);
    if (!f.j.empty()) {
      cfg.j = qmr::IntRange::parse(f.j);
      cfg.j_given = true;
    }
    if (f.jmax < 0) throw qmr::UsageError("jmax must be >= 0");
    cfg.jmax = f.jmax;
    cfg.e_max = f.emax;
    if (f.regime == "fano") cfg.regime = qmr::Regime::fano;
    if (f.regime == "general") cfg.regime = qmr::Regime::general;
    static const std::map<std::string, qmr::EvaluatorChoice> evaluators{
        {"direct", qmr::EvaluatorChoice::direct},
        {"cascade", qmr::EvaluatorChoice::cascade},
        {"both", qmr::EvaluatorChoice::both}};
    cfg.evaluator = evaluators.at(f.evaluator);
    static const std::map<std::string, qmr::Format> formats{
        {"json", qmr::Format::json}, {"csv", qmr::Format::csv}, {"text", qmr::Format::text}};
    cfg.format = formats.at(f.format);
    cfg.output = f.out;
    cfg.workers = f.workers > 0 ? f.workers : qmr::default_workers();
    cfg.cache = f.cache;
    if (cfg.command == qmr::Command::bench && f.evaluator != "both") {
      throw qmr::UsageError("bench needs both evaluators");
    }
  } catch (const qmr::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return static_cast<int>(qmr::ExitStatus::usage);
  }
  return static_cast<int>(qmr::run(cfg));
}
