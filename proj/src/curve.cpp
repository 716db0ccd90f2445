#include "dht/curve.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dht {

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::rate_nats: return "rate_nats";
    case Axis::rate_bits: return "rate_bits";
    case Axis::delta_nats: return "delta_nats";
    case Axis::theta_nats: return "theta_nats";
    case Axis::radius: return "radius";
  }
  return "unknown";
}

void validate(const Curve& c) {
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (!std::isfinite(c.points[i].x) || !std::isfinite(c.points[i].y))
      throw std::invalid_argument("Curve '" + c.name + "': non-finite entry");
    if (i > 0 && !(c.points[i].x > c.points[i - 1].x) &&
        !(c.points[i].x < c.points[i - 1].x))
      throw std::invalid_argument("Curve '" + c.name + "': x not strictly monotone");
    if (i > 1) {
      const bool up = c.points[1].x > c.points[0].x;
      const bool step_up = c.points[i].x > c.points[i - 1].x;
      if (up != step_up)
        throw std::invalid_argument("Curve '" + c.name + "': x direction flips");
    }
  }
}

void write_csv(const Curve& c, std::ostream& os) {
  os << axis_name(c.x_label) << ',' << axis_name(c.y_label) << '\n';
  char buf[64];
  for (const CurvePoint& p : c.points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
    os << buf;
  }
}

std::string to_csv(const Curve& c) {
  std::ostringstream os;
  write_csv(c, os);
  return os.str();
}

double curve_value(const Curve& c, double x) {
  if (c.points.empty()) throw std::invalid_argument("curve_value: empty curve");
  if (c.points.size() == 1) return c.points.front().y;
  const bool ascending = c.points[1].x > c.points[0].x;
  auto at = [&](std::size_t i) {
    return ascending ? c.points[i] : c.points[c.points.size() - 1 - i];
  };
  if (x <= at(0).x) return at(0).y;
  if (x >= at(c.points.size() - 1).x) return at(c.points.size() - 1).y;
  std::size_t lo = 0, hi = c.points.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (at(mid).x <= x ? lo : hi) = mid;
  }
  const CurvePoint a = at(lo), b = at(hi);
  const double w = (x - a.x) / (b.x - a.x);
  return a.y + w * (b.y - a.y);
}

}  // namespace dht
