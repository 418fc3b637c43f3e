// SPDX-License-Identifier: MIT
#pragma once

#include "jenchain/convex_fn.hpp"
#include "jenchain/rational.hpp"
#include "jenchain/vectors.hpp"

namespace jenchain {

enum class AllowSigned { no, yes };

/// Exact weighted average of the points; works for signed weights too.
Rational barycenter(const PointVector& x, const WeightVector& w);

/// Sum of w_i * f(x_i) in double precision, left-to-right accumulation.
double weighted_f_sum(const ConvexFn& f, const PointVector& x, const WeightVector& w);

/// The Jensen functional: sum of w_i f(x_i) minus f applied to the barycenter.
/// Nonnegative for convex f and unsigned w; signed vectors are evaluated by
/// the same formula but must be requested explicitly.
double jensen(const ConvexFn& f, const PointVector& x, const WeightVector& w,
              AllowSigned allow = AllowSigned::no);

}  // namespace jenchain
