// Sequential vs parallel wall time on a generated instance.
//
//   polyenum_bench FAMILY PARAMS... [-np N]... [-maxc C] [-scale S] [-reps R]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyenum/bounds.hpp"
#include "polyenum/errors.hpp"
#include "polyenum/generators.hpp"
#include "polyenum/orchestrator.hpp"

using namespace polyenum;

namespace {

template <class F>
double best_of(std::size_t reps, F&& f) {
  double best = 1e300;
  for (std::size_t i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (args.empty()) throw UsageError("missing family");
    const Family family = parse_family(args[0]);
    std::vector<std::size_t> params, workers;
    std::size_t maxc = 50, scale = 100, reps = 1;
    for (std::size_t i = 1; i < args.size(); ++i) {
      auto next = [&] {
        if (i + 1 >= args.size()) throw UsageError(args[i] + " needs a value");
        return static_cast<std::size_t>(std::stoul(args[++i]));
      };
      if (args[i] == "-np") workers.push_back(next());
      else if (args[i] == "-maxc") maxc = next();
      else if (args[i] == "-scale") scale = next();
      else if (args[i] == "-reps") reps = next();
      else params.push_back(std::stoul(args[i]));
    }
    if (workers.empty()) workers = {1, 2, 4, 8};
    const Problem p = generate(family, params);

    CountingStats stats;
    const double t1 = best_of(reps, [&] {
      std::ostringstream out;
      stats = run_sequential(p, out);
    });
    std::printf("%s  bases %zu  vertices %zu\n", p.name.c_str(), stats.bases, stats.vertices);
    std::printf("%8s %10s %8s %6s\n", "workers", "seconds", "speedup", "eff");
    std::printf("%8s %10.3f %8s %6s\n", "seq", t1, "1.00", "1.00");
    for (std::size_t w : workers) {
      RunOptions o;
      o.master.workers = w;
      o.master.max_cobases = maxc;
      o.master.scale = scale;
      const double tn = best_of(reps, [&] {
        std::ostringstream out;
        run_parallel(p, o, out);
      });
      std::printf("%8zu %10.3f %8s %6s\n", w, tn, format_ratio(t1 / tn).c_str(),
                  format_ratio(efficiency(t1, w, tn)).c_str());
    }
  } catch (const std::exception& e) {
    std::cerr << "polyenum_bench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
