// SPDX-License-Identifier: MIT
#include "jenchain/convex_fn.hpp"

#include <algorithm>
#include <cmath>

#include "jenchain/error.hpp"

namespace jenchain {

std::string fn_kind_name(FnKind k) {
  switch (k) {
    case FnKind::square: return "square";
    case FnKind::absolute: return "abs";
    case FnKind::exponential: return "exp";
    case FnKind::fourth_power: return "fourth_power";
    case FnKind::neg_log: return "neg_log";
    case FnKind::piecewise_linear: return "piecewise_linear";
  }
  throw ConfigError("unknown function kind");
}

FnKind fn_kind_from_name(const std::string& name) {
  if (name == "square") return FnKind::square;
  if (name == "abs") return FnKind::absolute;
  if (name == "exp") return FnKind::exponential;
  if (name == "fourth_power") return FnKind::fourth_power;
  if (name == "neg_log") return FnKind::neg_log;
  if (name == "piecewise_linear") return FnKind::piecewise_linear;
  throw ParseError("unknown function kind '" + name + "'");
}

ConvexFn::ConvexFn(FnKind kind, double a, double b, std::vector<Breakpoint> bps)
    : kind_(kind), a_(a), b_(b), breakpoints_(std::move(bps)) {
  if (!(a < b)) throw DomainError("domain requires a < b");
  if (!std::isfinite(a)) throw DomainError("domain lower bound must be finite");
  if (kind == FnKind::neg_log && !(a > 0.0)) throw DomainError("neg_log requires a > 0");
  if (kind == FnKind::piecewise_linear) {
    if (breakpoints_.size() < 2) throw DomainError("piecewise_linear needs at least 2 breakpoints");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
      if (!(breakpoints_[i - 1].x < breakpoints_[i].x))
        throw DomainError("piecewise_linear breakpoints must be strictly increasing in x");
    }
    if (a < breakpoints_.front().x || (std::isfinite(b) && b > breakpoints_.back().x))
      throw DomainError("piecewise_linear domain must lie within the breakpoint span");
    if (!std::isfinite(b)) throw DomainError("piecewise_linear domain must be bounded");
  } else if (!breakpoints_.empty()) {
    throw DomainError("breakpoints are only valid for piecewise_linear");
  }
}

ConvexFn ConvexFn::make(FnKind kind, double a, double b) {
  if (kind == FnKind::piecewise_linear)
    throw ConfigError("use ConvexFn::piecewise for piecewise_linear");
  return ConvexFn(kind, a, b, {});
}

ConvexFn ConvexFn::piecewise(std::vector<Breakpoint> bps) {
  if (bps.size() < 2) throw DomainError("piecewise_linear needs at least 2 breakpoints");
  double a = bps.front().x;
  double b = bps.back().x;
  return ConvexFn(FnKind::piecewise_linear, a, b, std::move(bps));
}

ConvexFn ConvexFn::piecewise(std::vector<Breakpoint> bps, double a, double b) {
  return ConvexFn(FnKind::piecewise_linear, a, b, std::move(bps));
}

double ConvexFn::eval(double x) const {
  if (!contains(x))
    throw DomainError("point " + std::to_string(x) + " outside domain [" + std::to_string(a_) +
                      ", " + std::to_string(b_) + ")");
  switch (kind_) {
    case FnKind::square: return x * x;
    case FnKind::absolute: return std::fabs(x);
    case FnKind::exponential: return std::exp(x);
    case FnKind::fourth_power: {
      double s = x * x;
      return s * s;
    }
    case FnKind::neg_log: return -std::log(x);
    case FnKind::piecewise_linear: {
      // x < b <= last breakpoint, so a right neighbour always exists.
      auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x,
                                 [](double v, const Breakpoint& bp) { return v < bp.x; });
      const Breakpoint& hi = *it;
      const Breakpoint& lo = *(it - 1);
      double t = (x - lo.x) / (hi.x - lo.x);
      return lo.y + t * (hi.y - lo.y);
    }
  }
  throw ConfigError("unknown function kind");
}

bool check_convexity(const ConvexFn& f, int grid_size) {
  if (grid_size < 3) throw ConfigError("grid_size must be >= 3");
  double lo = f.lower();
  double hi = f.unbounded_above() ? lo + 1e6 : f.upper();
  // Keep every sample (and thus every midpoint) strictly inside [a, b).
  hi = lo + (hi - lo) * (1.0 - 1e-9);

  std::vector<double> u(static_cast<std::size_t>(grid_size));
  std::vector<double> fu(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    fu[i] = f.eval(u[i]);
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      double mid = 0.5 * (u[i] + u[j]);
      double tol = 1e-12 * (1.0 + std::fabs(fu[i]) + std::fabs(fu[j]));
      if (!(f.eval(mid) <= 0.5 * (fu[i] + fu[j]) + tol)) return false;
    }
  }
  return true;
}

nlohmann::json ConvexFn::to_json() const {
  nlohmann::json j;
  j["kind"] = fn_kind_name(kind_);
  j["a"] = a_;
  if (unbounded_above()) {
    j["b"] = "inf";
  } else {
    j["b"] = b_;
  }
  if (kind_ == FnKind::piecewise_linear) {
    nlohmann::json bps = nlohmann::json::array();
    for (const auto& bp : breakpoints_) bps.push_back({bp.x, bp.y});
    j["breakpoints"] = bps;
  }
  return j;
}

ConvexFn ConvexFn::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("function spec must have a kind");
  FnKind kind = fn_kind_from_name(j.at("kind").get<std::string>());
  if (!j.contains("a")) throw ParseError("function spec must have domain bound a");
  double a = j.at("a").get<double>();
  double b;
  if (!j.contains("b")) throw ParseError("function spec must have domain bound b");
  if (j.at("b").is_string()) {
    if (j.at("b").get<std::string>() != "inf") throw ParseError("domain bound b must be a number or \"inf\"");
    b = std::numeric_limits<double>::infinity();
  } else {
    b = j.at("b").get<double>();
  }
  if (kind == FnKind::piecewise_linear) {
    if (!j.contains("breakpoints")) throw ParseError("piecewise_linear spec needs breakpoints");
    std::vector<Breakpoint> bps;
    for (const auto& e : j.at("breakpoints")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("breakpoints must be [x, y] pairs");
      bps.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return ConvexFn::piecewise(std::move(bps), a, b);
  }
  return ConvexFn::make(kind, a, b);
}

}  // namespace jenchain
