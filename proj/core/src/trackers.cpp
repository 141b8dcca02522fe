#include "ebcs/trackers.hpp"

#include <algorithm>

#include "ebcs/baselines.hpp"
#include "ebcs/eb.hpp"
#include "ebcs/errors.hpp"
#include "ebcs/stitched.hpp"

namespace ebcs {

namespace {

class EbTracker final : public Tracker {
 public:
  EbTracker(Method m, EbConfig config) : method_(m), config_(config), state_(new_state(config_)) {}

  void update(double x) override { update_in_place(state_, config_, x); }

  Interval interval() const override {
    switch (method_) {
      case Method::kApx: return interval_apx(state_, config_);
      case Method::kMix: return interval_mix(state_, config_);
      default: return interval_unif(state_, config_);
    }
  }

  bool contains(double m) const override {
    if (method_ == Method::kMix) return mix_contains(state_, config_, m);
    return interval().contains(m);
  }

  bool valid() const override {
    if (method_ == Method::kMix) return true;
    if (method_ == Method::kApx) return state_.t0_reached;
    return interval().valid;
  }

  Method method() const override { return method_; }

 private:
  Method method_;
  EbConfig config_;
  EbState state_;
};

class StitchTracker final : public Tracker {
 public:
  explicit StitchTracker(StitchConfig config) : config_(std::move(config)) {}
  void update(double x) override { update_in_place(state_, x); }
  Interval interval() const override { return stitched_halfwidth(state_, config_); }
  bool valid() const override { return stitched_valid(config_, state_.v_t); }
  Method method() const override { return Method::kStch; }

 private:
  StitchConfig config_;
  StitchState state_;
};

class WsrTracker final : public Tracker {
 public:
  explicit WsrTracker(WsrConfig config) : config_(config) {}
  void update(double x) override { update_in_place(state_, config_, x); }
  Interval interval() const override { return wsr_interval(state_, config_); }
  bool valid() const override { return true; }
  Method method() const override { return Method::kWsr; }

 private:
  WsrConfig config_;
  WsrState state_;
};

class HrmsTracker final : public Tracker {
 public:
  explicit HrmsTracker(HrmsConfig config) : config_(config) {}
  void update(double x) override { update_in_place(state_, x); }
  Interval interval() const override { return hrms_interval(state_, config_); }
  bool valid() const override { return true; }
  Method method() const override { return Method::kHrms; }

 private:
  HrmsConfig config_;
  HrmsState state_;
};

class HoeffTracker final : public Tracker {
 public:
  explicit HoeffTracker(SubGaussianConfig config) : config_(config) {}
  void update(double x) override { update_in_place(state_, config_, x); }
  Interval interval() const override { return hoeffding_interval(state_, config_); }
  bool valid() const override { return true; }
  Method method() const override { return Method::kHoeff; }

 private:
  SubGaussianConfig config_;
  HoeffdingState state_;
};

class RobbinsTracker final : public Tracker {
 public:
  explicit RobbinsTracker(SubGaussianConfig config) : config_(config) {}
  void update(double x) override { update_in_place(state_, x); }
  Interval interval() const override { return robbins_interval(state_, config_); }
  bool valid() const override { return true; }
  Method method() const override { return Method::kRobbins; }

 private:
  SubGaussianConfig config_;
  RobbinsState state_;
};

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "apx") return Method::kApx;
  if (name == "mix") return Method::kMix;
  if (name == "unif") return Method::kUnif;
  if (name == "stch") return Method::kStch;
  if (name == "wsr") return Method::kWsr;
  if (name == "hrms") return Method::kHrms;
  if (name == "hoeff") return Method::kHoeff;
  if (name == "robbins") return Method::kRobbins;
  throw ConfigError("unknown method '" + name + "'");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kApx: return "apx";
    case Method::kMix: return "mix";
    case Method::kUnif: return "unif";
    case Method::kStch: return "stch";
    case Method::kWsr: return "wsr";
    case Method::kHrms: return "hrms";
    case Method::kHoeff: return "hoeff";
    case Method::kRobbins: return "robbins";
  }
  return "?";
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto piece = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const Method m = parse_method(piece);
    if (std::find(out.begin(), out.end(), m) != out.end()) throw ConfigError("method '" + piece + "' listed twice");
    out.push_back(m);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool needs_sigma(Method m) { return m == Method::kHoeff || m == Method::kRobbins; }

std::unique_ptr<Tracker> make_tracker(Method m, const MethodParams& p) {
  switch (m) {
    case Method::kApx:
    case Method::kMix:
    case Method::kUnif: {
      EbConfig c;
      c.alpha = p.alpha;
      c.kappa = p.kappa;
      c.intersect = p.intersect && m == Method::kApx;
      c.validate();
      return std::make_unique<EbTracker>(m, c);
    }
    case Method::kStch: {
      StitchConfig c;
      c.alpha = p.alpha;
      c.eta = p.eta;
      c.s = p.s;
      c.l0 = p.l0;
      c.validate();
      return std::make_unique<StitchTracker>(c);
    }
    case Method::kWsr: {
      WsrConfig c{p.alpha, p.alpha_free_lambda};
      c.validate();
      return std::make_unique<WsrTracker>(c);
    }
    case Method::kHrms: {
      HrmsConfig c{p.alpha, p.eta, p.s};
      c.validate();
      return std::make_unique<HrmsTracker>(c);
    }
    case Method::kHoeff:
    case Method::kRobbins: {
      if (!p.sigma) throw ConfigError(to_string(m) + " needs --sigma");
      SubGaussianConfig c{*p.sigma, p.a, p.alpha, p.alpha_free_lambda};
      c.validate();
      if (m == Method::kHoeff) return std::make_unique<HoeffTracker>(c);
      return std::make_unique<RobbinsTracker>(c);
    }
  }
  throw ConfigError("unknown method");
}

}  // namespace ebcs
