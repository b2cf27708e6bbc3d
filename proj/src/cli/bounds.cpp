#include "polyenum/bounds.hpp"

#include <cmath>
#include <cstdio>

#include "polyenum/errors.hpp"

namespace polyenum {

Integer mcmullen_bound(std::size_t m, std::size_t d) {
  if (d < 1 || m <= d) throw DomainError("mcmullen_bound requires m > d >= 1");
  return binomial(m - (d + 1) / 2, m - d) + binomial(m - (d + 2) / 2, m - d);
}

VertexBounds vertex_bounds(std::size_t m, std::size_t d) {
  VertexBounds out{0, mcmullen_bound(m, d)};
  const Integer target(static_cast<long>(m));
  std::size_t t = d + 1;
  while (mcmullen_bound(t, d) < target) ++t;
  out.lower = Integer(static_cast<long>(t));
  return out;
}

double efficiency(double t1, std::size_t cores, double tn) {
  if (!(t1 > 0) || cores == 0 || !(tn > 0)) throw DomainError("efficiency inputs must be positive");
  return t1 / (static_cast<double>(cores) * tn);
}

std::string format_ratio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

}  // namespace polyenum
