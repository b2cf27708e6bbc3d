#include "polyenum/cli.hpp"

#include <charconv>
#include <thread>

#include "polyenum/errors.hpp"

namespace polyenum {

namespace {

std::size_t positive(const std::string& flag, const std::string& value) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size() || v < 1) {
    throw UsageError(flag + " expects a positive integer, got '" + value + "'");
  }
  return v;
}

double seconds(const std::string& flag, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos == value.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + " expects a positive number of seconds, got '" + value + "'");
}

}  // namespace

std::size_t default_workers(std::size_t cores) { return cores > 3 ? cores - 2 : 1; }

RunConfig parse_cli(const std::vector<std::string>& args) {
  RunConfig cfg;
  cfg.workers = default_workers(std::thread::hardware_concurrency());
  std::size_t i = 0;
  if (i < args.size() && args[i] == "run") ++i;
  bool have_input = false;
  bool explicit_np = false;

  auto value = [&](const std::string& flag) -> const std::string& {
    if (i + 1 >= args.size()) throw UsageError(flag + " needs a value");
    return args[++i];
  };

  for (; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "-seq") {
      cfg.mode = RunMode::sequential;
    } else if (a == "-np") {
      cfg.workers = positive(a, value(a));
      explicit_np = true;
    } else if (a == "-id") {
      cfg.init_depth = positive(a, value(a));
    } else if (a == "-maxc") {
      cfg.max_cobases = positive(a, value(a));
    } else if (a == "-maxd") {
      cfg.max_depth = positive(a, value(a));
    } else if (a == "-lmin") {
      cfg.lmin = positive(a, value(a));
    } else if (a == "-lmax") {
      cfg.lmax = positive(a, value(a));
    } else if (a == "-scale") {
      cfg.scale = positive(a, value(a));
    } else if (a == "-hist") {
      cfg.histogram = value(a);
    } else if (a == "-checkp") {
      cfg.checkpoint = value(a);
    } else if (a == "-restart") {
      cfg.restart = value(a);
    } else if (a == "-stopafter") {
      cfg.stop_after = positive(a, value(a));
    } else if (a == "-time") {
      cfg.time_limit = seconds(a, value(a));
    } else if (a == "-sockets") {
      cfg.binding = Binding::sockets;
    } else if (a == "-o") {
      cfg.output = value(a);
    } else if (a == "-" || a.empty() || a[0] != '-') {
      if (have_input) throw UsageError("more than one input file: '" + a + "'");
      cfg.input = a;
      have_input = true;
    } else {
      throw UsageError("unknown option '" + a + "'");
    }
  }

  if (cfg.mode == RunMode::sequential) {
    if (explicit_np) throw UsageError("-seq and -np are mutually exclusive");
    if (cfg.restart) throw UsageError("-restart needs a parallel run");
    if (cfg.checkpoint || cfg.stop_after || cfg.time_limit) {
      throw UsageError("checkpointing needs a parallel run");
    }
    if (cfg.histogram) throw UsageError("-hist needs a parallel run");
  }
  return cfg;
}

MasterConfig master_config(const RunConfig& cfg) {
  MasterConfig m;
  m.workers = cfg.workers;
  m.init_depth = cfg.init_depth;
  m.max_cobases = cfg.max_cobases;
  m.max_depth = cfg.max_depth;
  m.lmin = cfg.lmin;
  m.lmax = cfg.lmax;
  m.scale = cfg.scale;
  m.stop_after_bases = cfg.stop_after;
  m.time_limit = cfg.time_limit;
  if (cfg.checkpoint) m.checkpoint_path = *cfg.checkpoint;
  return m;
}

std::string usage() {
  return R"(usage:
  polyenum [run] [options] [file.ine]   enumerate vertices (H input) or facets (V input)
  polyenum gen FAMILY N [N]             write a generated instance
  polyenum bound M D                    McMullen upper bound and vertex range
  polyenum eff T1 CORES TN              parallel efficiency T1 / (CORES * TN)

run options:
  -seq            sequential reverse search
  -np N           worker count (default: cores - 2, at least 1)
  -id N           initial job depth bound (2)
  -maxc N         max_cobases budget (50)
  -maxd N         max_depth budget (2)
  -lmin N         depth-bound jobs while the queue is below N * (workers + 2) (3)
  -lmax N         scale the node budget once the queue exceeds N * (workers + 2) (3)
  -scale N        budget multiplier for long job lists (100)
  -hist FILE      write "t busy queue" lines to FILE
  -checkp FILE    checkpoint file written when the run stops early
  -restart FILE   resume from a checkpoint
  -stopafter N    stop and checkpoint after N bases
  -time SECS      stop and checkpoint after SECS seconds
  -sockets        connect the processes over loopback TCP
  -o FILE         output file (default: standard output)

families: cube D, cross D, simplex D, cyclic M D, kleeminty D, permutahedron P
)";
}

}  // namespace polyenum
