// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "jenchain/chain.hpp"
#include "jenchain/error.hpp"

namespace jenchain::detail {

struct RatioScan {
  Rational min;
  Rational max;
  std::vector<std::size_t> argmin;
  std::vector<std::size_t> argmax;
};

// Ratio extremes of p_i/q_i; p may be signed (upper-chain states).
inline RatioScan scan_ratios(const std::vector<Rational>& p, const WeightVector& q,
                             const char* who) {
  require_same_length(p.size(), q.size(), who);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) throw ZeroDenominator(std::string(who) + ": q[" + std::to_string(i + 1) + "] = 0");
    if (q[i] < 0) throw InvariantViolation(std::string(who) + ": q must be strictly positive");
  }
  RatioScan s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational r = p[i] / q[i];
    if (i == 0 || r < s.min) {
      s.min = r;
      s.argmin.clear();
    }
    if (r == s.min) s.argmin.push_back(i);
    if (i == 0 || r > s.max) {
      s.max = r;
      s.argmax.clear();
    }
    if (r == s.max) s.argmax.push_back(i);
  }
  return s;
}

inline Rational weighted_point_sum(const std::vector<Rational>& w, const std::vector<Rational>& x) {
  Rational acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
  return acc;
}

inline Rational entry_sum(const std::vector<Rational>& v) {
  Rational acc = 0;
  for (const auto& e : v) acc += e;
  return acc;
}

// Exact conservation of the weight sum and the barycenter; these hold by
// construction and a failure means the step logic is broken.
inline void check_conserved(const std::vector<Rational>& p, const std::vector<Rational>& x,
                            const Rational& bary0, int k, const char* who) {
  if (entry_sum(p) != 1)
    throw InvariantViolation(std::string(who) + ": weight sum != 1 after step " + std::to_string(k));
  if (weighted_point_sum(p, x) != bary0)
    throw InvariantViolation(std::string(who) + ": barycenter drifted after step " + std::to_string(k));
}

// Jensen functional of one step together with the magnitude of the float
// expression that produced it. The magnitude, not the (possibly cancelled)
// value, is what bounds the evaluation error once the functional is scaled
// by a large extreme ratio.
struct FunctionalEval {
  double value = 0.0;
  double magnitude = 0.0;  // sum |w_i f(x_i)| + |f(barycenter)|
};

inline FunctionalEval eval_functional(const ConvexFn& f, const std::vector<Rational>& x,
                                      const std::vector<Rational>& w) {
  FunctionalEval out;
  Rational bary = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double term = to_double(w[i]) * f.eval(to_double(x[i]));
    out.value += term;
    out.magnitude += std::fabs(term);
    bary += w[i] * x[i];
  }
  double fb = f.eval(to_double(bary));
  out.value -= fb;
  out.magnitude += std::fabs(fb);
  return out;
}

}  // namespace jenchain::detail
