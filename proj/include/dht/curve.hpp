#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dht {

enum class Axis { rate_nats, rate_bits, delta_nats, theta_nats, radius };

const char* axis_name(Axis a);

struct CurvePoint {
  double x;
  double y;
};

/// An ordered list of (x, y) samples of a bound or achievability curve.
/// x is strictly monotone and all entries are finite. `flags` records
/// non-default events (value clamps, fallbacks) that occurred while the
/// curve was produced.
struct Curve {
  std::string name;
  Axis x_label = Axis::delta_nats;
  Axis y_label = Axis::rate_nats;
  std::vector<CurvePoint> points;
  std::vector<std::string> flags;
};

/// Throws std::invalid_argument if x is not strictly monotone or any entry is
/// non-finite.
void validate(const Curve& c);

/// CSV with a single header row naming the axes, then one `x,y` row per
/// point, 17 significant digits.
void write_csv(const Curve& c, std::ostream& os);
std::string to_csv(const Curve& c);

/// Piecewise-linear evaluation with flat extension beyond both endpoints.
double curve_value(const Curve& c, double x);

}  // namespace dht
