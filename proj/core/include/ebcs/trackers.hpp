#pragma once

// Uniform per-stream interface over every scalar method, used by the harness.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ebcs/interval.hpp"

namespace ebcs {

enum class Method { kApx, kMix, kUnif, kStch, kWsr, kHrms, kHoeff, kRobbins };

Method parse_method(const std::string& name);
std::string to_string(Method m);
/// Comma-separated list; throws ConfigError on unknown or duplicate names.
std::vector<Method> parse_methods(const std::string& list);
bool needs_sigma(Method m);

struct MethodParams {
  double alpha = 0.05;
  double kappa = 0.25;
  double eta = 2.0;
  double s = 1.4;
  double l0 = 1.0;
  std::optional<double> sigma;
  double a = 1.0;
  bool intersect = false;
  bool alpha_free_lambda = false;
};

class Tracker {
 public:
  virtual ~Tracker() = default;
  virtual void update(double x) = 0;
  virtual Interval interval() const = 0;
  /// Whether m lies in the current set. Defaults to interval().contains(m);
  /// the exact mixture overrides it to skip root finding.
  virtual bool contains(double m) const { return interval().contains(m); }
  /// Whether the method currently carries a coverage guarantee.
  virtual bool valid() const { return interval().valid; }
  virtual Method method() const = 0;
};

/// Throws ConfigError if parameters are invalid or sigma is missing for a
/// sub-Gaussian method.
std::unique_ptr<Tracker> make_tracker(Method m, const MethodParams& params);

}  // namespace ebcs
