// SPDX-License-Identifier: MIT
#pragma once

#include "jenchain/chain.hpp"

namespace jenchain {

/// One reducing lower step: the s entries attaining the minimum ratio are
/// removed; survivors keep their point and lose m*q_i; a single entry of
/// weight m at the q-barycenter is appended last. Length drops to n - s + 1.
StepOutcome reduce_lower_step(const ChainState& state, const WeightVector& q_step);

/// One reducing upper step: the pivot takes weight M at the q-barycenter;
/// non-pivot entries whose residual p_i - M*q_i is exactly zero are removed,
/// the rest keep their point with the (negative) residual weight. Survivors
/// keep their relative order.
StepOutcome reduce_upper_step(const ChainState& state, const WeightVector& q_step);

/// Chains over the reducing steps. The q-sequence must be shape-compatible
/// with the data-dependent lengths; mismatches name the offending step.
/// A chain that shrinks to a single point terminates early with a report.
ChainResult reduce_lower_chain(const ConvexFn& f, const PointVector& x1, const WeightVector& p1,
                               const QSequence& qs, int N);

ChainResult reduce_upper_chain(const ConvexFn& f, const PointVector& x1, const WeightVector& p1,
                               const QSequence& qs, int N);

}  // namespace jenchain
