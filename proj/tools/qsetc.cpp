// qsetc: evaluate quasi-set expressions, run occupancy statistics, and
// check the library's own invariants from the command line.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qset/error.hpp"
#include "qset/eval.hpp"
#include "qset/parser.hpp"
#include "qset/selftest.hpp"
#include "qset/stat.hpp"
#include "qset/universe.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEval = 1;
constexpr int kExitParse = 2;

void emit(const qset::Result& result, const std::string& format, bool debug_witnesses) {
  if (format == "json") {
    std::cout << qset::render_json(result, debug_witnesses).dump() << "\n";
  } else {
    std::string text = qset::render_text(result, debug_witnesses);
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  }
}

void emit(const qset::stat::DistributionReport& report, const std::string& format) {
  if (format == "json") {
    std::cout << qset::stat::to_json(report).dump() << "\n";
  } else {
    std::cout << qset::stat::render_text(report);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite quasi-set kernel and occupancy statistics"};
  app.require_subcommand(1);

  std::string expr_text, universe_file, format = "text", model = "mb";
  std::size_t boxes = 1, particles = 0;
  bool debug_witnesses = false;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
  eval_cmd->add_option("expr", expr_text, "expression to evaluate")->required();
  eval_cmd->add_option("--universe", universe_file, "universe declaration file");
  eval_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  eval_cmd->add_flag("--debug-witnesses", debug_witnesses,
                     "include hidden witness tags in the output");

  auto* stats_cmd = app.add_subcommand("stats", "occupancy statistics report");
  stats_cmd->add_option("--model", model, "counting model")
      ->required()
      ->check(CLI::IsMember({"mb", "be", "fd"}));
  stats_cmd->add_option("-n,--boxes", boxes, "number of boxes")->required();
  stats_cmd->add_option("-N,--particles", particles, "number of particles")->required();
  stats_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* dist_cmd = app.add_subcommand("dist", "box distributions of a qset");
  dist_cmd->add_option("--expr", expr_text, "qset expression")->required();
  dist_cmd->add_option("-n,--boxes", boxes, "number of boxes")->required();
  dist_cmd->add_option("--universe", universe_file, "universe declaration file");
  dist_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }

  try {
    qset::Universe universe;
    if (!universe_file.empty()) universe = qset::Universe::from_file(universe_file);

    if (eval_cmd->parsed()) {
      qset::Result result = qset::eval(qset::parse(expr_text), universe);
      emit(result, format, debug_witnesses);
      return kExitOk;
    }
    if (stats_cmd->parsed()) {
      qset::stat::DistributionReport report;
      if (model == "mb")
        report = qset::stat::mb_report(boxes, particles);
      else if (model == "be")
        report = qset::stat::be_report(boxes, particles);
      else
        report = qset::stat::fd_report(boxes, particles);
      emit(report, format);
      return kExitOk;
    }
    if (dist_cmd->parsed()) {
      qset::Result parsed = qset::eval(qset::parse(expr_text), universe);
      const auto* q = std::get_if<qset::QSetValue>(&parsed);
      if (!q) throw qset::Error(qset::Errc::not_a_qset, "--expr must evaluate to a qset");
      emit(qset::stat::distributions_of_qset(*q, boxes), format);
      return kExitOk;
    }
    if (selftest_cmd->parsed()) {
      return qset::run_selftest(std::cout) ? kExitOk : kExitEval;
    }
  } catch (const qset::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const qset::Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == qset::Errc::invalid_universe) return kExitParse;
    return kExitEval;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitEval;
  }
  return kExitOk;
}
