// SPDX-License-Identifier: MIT
#include "jenchain/jensen.hpp"

#include "jenchain/error.hpp"

namespace jenchain {

Rational barycenter(const PointVector& x, const WeightVector& w) {
  require_same_length(x.size(), w.size(), "barycenter");
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * x[i];
  return acc;
}

double weighted_f_sum(const ConvexFn& f, const PointVector& x, const WeightVector& w) {
  require_same_length(x.size(), w.size(), "weighted_f_sum");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += to_double(w[i]) * f.eval(to_double(x[i]));
  return acc;
}

double jensen(const ConvexFn& f, const PointVector& x, const WeightVector& w, AllowSigned allow) {
  require_same_length(x.size(), w.size(), "jensen");
  if (w.is_signed() && allow == AllowSigned::no)
    throw InvariantViolation("signed weight vector passed to a bound-checking entry point");
  double sum = weighted_f_sum(f, x, w);
  return sum - f.eval(to_double(barycenter(x, w)));
}

}  // namespace jenchain
