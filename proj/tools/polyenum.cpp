#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polyenum/bounds.hpp"
#include "polyenum/cli.hpp"
#include "polyenum/errors.hpp"
#include "polyenum/generators.hpp"
#include "polyenum/orchestrator.hpp"

using namespace polyenum;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

std::size_t count_arg(const std::string& s) {
  std::size_t pos = 0;
  try {
    if (!s.empty() && s[0] != '-') {
      auto v = std::stoull(s, &pos);
      if (pos == s.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw UsageError("expected a non-negative integer, got '" + s + "'");
}

double seconds_arg(const std::string& s) {
  std::size_t pos = 0;
  try {
    double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("expected a number, got '" + s + "'");
}

int cmd_gen(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("gen needs a family");
  std::vector<std::size_t> params;
  for (std::size_t i = 1; i < args.size(); ++i) params.push_back(count_arg(args[i]));
  std::cout << write_problem(generate(parse_family(args[0]), params));
  return 0;
}

int cmd_bound(const std::vector<std::string>& args) {
  if (args.size() != 2) throw UsageError("bound needs M D");
  const auto m = count_arg(args[0]);
  const auto d = count_arg(args[1]);
  auto b = vertex_bounds(m, d);
  std::cout << "f(" << m << "," << d << ") = " << b.upper << "\n"
            << b.lower << " <= |V| <= " << b.upper << "\n";
  return 0;
}

int cmd_eff(const std::vector<std::string>& args) {
  if (args.size() != 3) throw UsageError("eff needs T1 CORES TN");
  std::cout << format_ratio(efficiency(seconds_arg(args[0]), count_arg(args[1]), seconds_arg(args[2]))) << "\n";
  return 0;
}

Problem read_input(const std::string& path) {
  if (path == "-") return parse_problem(std::cin);
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open '" + path + "'");
  return parse_problem(f);
}

int cmd_run(const std::vector<std::string>& args) {
  const RunConfig cfg = parse_cli(args);
  const Problem problem = read_input(cfg.input);

  std::ofstream file;
  if (cfg.output) {
    file.open(*cfg.output, std::ios::trunc);
    if (!file) throw SinkWriteFailure("cannot open output '" + *cfg.output + "'");
  }
  std::ostream& out = cfg.output ? static_cast<std::ostream&>(file) : std::cout;

  if (cfg.mode == RunMode::sequential) {
    run_sequential(problem, out);
    return 0;
  }

  RunOptions opts;
  opts.master = master_config(cfg);
  opts.master.stop_flag = &g_stop;
  opts.binding = cfg.binding;
  std::ofstream hist;
  if (cfg.histogram) {
    hist.open(*cfg.histogram, std::ios::trunc);
    if (!hist) std::cerr << "polyenum: cannot open histogram file '" << *cfg.histogram << "'\n";
    else opts.master.histogram = &hist;
  }
  if (cfg.restart) opts.restart = checkpoint_read_file(*cfg.restart);

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  auto result = run_parallel(problem, opts, out);
  if (result.master.checkpoint) {
    std::cerr << "polyenum: stopped with " << result.master.checkpoint->jobs.size() << " jobs unfinished";
    if (cfg.checkpoint) std::cerr << ", checkpoint written to " << *cfg.checkpoint;
    std::cerr << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (!args.empty() && (args[0] == "-h" || args[0] == "--help" || args[0] == "help")) {
      std::cout << usage();
      return 0;
    }
    const std::string sub = args.empty() ? "" : args[0];
    const std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    if (sub == "gen") return cmd_gen(rest);
    if (sub == "bound") return cmd_bound(rest);
    if (sub == "eff") return cmd_eff(rest);
    return cmd_run(args);
  } catch (const UsageError& e) {
    std::cerr << "polyenum: " << e.what() << "\n\n" << usage();
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "polyenum: input " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "polyenum: " << e.what() << "\n";
    return 1;
  }
}
