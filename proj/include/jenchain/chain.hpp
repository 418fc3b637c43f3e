// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "jenchain/jensen.hpp"

namespace jenchain {

enum class ChainKind { lower, upper };
enum class ChainVariant { refine, reduce };

/// One snapshot of a chain. States 1..N carry the q consumed by their step,
/// the extreme ratio (m_k or M_k) and the step bookkeeping; the terminal
/// state N+1 carries weights and points only. Weights are raw rationals:
/// upper-chain states are legitimately signed.
struct ChainState {
  int k = 1;
  std::vector<Rational> p;
  std::vector<Rational> x;
  std::optional<std::vector<Rational>> q;
  std::optional<Rational> extreme;
  std::optional<int> multiplicity;              // s_k, lower chains
  std::optional<int> pivot;                     // 0-based pivot position, upper chains
  std::vector<std::size_t> eliminated;          // 0-based positions removed by this step (reduce)

  std::size_t n() const noexcept { return p.size(); }
  WeightVector weights() const { return WeightVector::signed_state(p); }
  PointVector points() const { return PointVector(x); }

  nlohmann::json to_json(ChainKind kind) const;
  static ChainState from_json(const nlohmann::json& j, ChainKind kind);
};

struct ChainResult {
  ChainKind kind = ChainKind::lower;
  ChainVariant variant = ChainVariant::refine;
  std::vector<ChainState> trace;                // steps_done + 1 states
  std::vector<Rational> extremes;               // e_1..e_{steps_done}
  std::vector<double> step_functionals;         // J(f, x_k, q_k)
  double initial_functional = 0.0;              // J(f, x_1, p_1)
  double defect = 0.0;
  double defect_scale = 1.0;                    // 1 + |J_1| + sum |e_k J_k|
  std::vector<int> stall_steps;                 // steps with extreme = 0
  bool terminated_early = false;
  int requested_steps = 0;
  int steps_done = 0;
  std::optional<int> pivot_j1;                  // 0-based, upper chains
  std::vector<int> n_seq;

  bool sign_ok(double tol_factor = 1e-9) const;

  nlohmann::json to_json() const;
  static ChainResult from_json(const nlohmann::json& j);
};

/// The a-priori q-sequence feeding a chain. Reducing chains have
/// data-dependent lengths, so besides explicit lists there is an
/// auto-uniform mode and a seeded generator hook.
class QSequence {
public:
  static QSequence explicit_list(std::vector<WeightVector> qs);
  static QSequence auto_uniform();
  static QSequence generated(std::function<WeightVector(int, std::size_t)> gen);

  bool is_explicit() const noexcept { return mode_ == Mode::explicit_list; }
  std::size_t explicit_count() const noexcept { return list_.size(); }
  const std::vector<WeightVector>& list() const noexcept { return list_; }

  /// q for 1-based step `step`, which must have length n. Explicit entries of
  /// the wrong length raise ShapeMismatch naming the step. Generated draws
  /// are memoized per step, so repeated calls see the same vector.
  WeightVector at(int step, std::size_t n) const;

private:
  enum class Mode { explicit_list, auto_uniform, generated };
  QSequence(Mode m) : mode_(m) {}

  Mode mode_;
  std::vector<WeightVector> list_;
  std::function<WeightVector(int, std::size_t)> gen_;
  mutable std::map<int, WeightVector> memo_;
};

/// One step of the lower refinement: entries attaining the minimum ratio
/// m = min p_i/q_i (exact comparison) are replaced by weight m/s at the
/// q-barycenter; all other entries lose m*q_i and keep their point.
struct StepOutcome {
  ChainState next;
  Rational extreme;
  int multiplicity = 0;                     // lower steps
  int pivot = -1;                           // 0-based pivot position in next (upper steps)
  std::vector<std::size_t> eliminated;      // reduce steps
};

StepOutcome lower_step(const ChainState& state, const WeightVector& q_next);

/// One step of the upper refinement: the fixed pivot takes weight M = p_j/q_j
/// and moves to the q-barycenter; every other entry loses M*q_i (may go
/// negative) and keeps its point. The input state must carry the pivot.
StepOutcome upper_step(const ChainState& state, const WeightVector& q_next);

ChainResult lower_chain(const ConvexFn& f, const PointVector& x1, const WeightVector& p1,
                        const QSequence& qs, int N);

ChainResult upper_chain(const ConvexFn& f, const PointVector& x1, const WeightVector& p1,
                        const QSequence& qs, int N);

/// M_k in closed form: p1[j1] divided by the product of the pivot's q entries
/// over the first k steps. Matches the trace extremes exactly.
Rational closed_form_Mk(const WeightVector& p1, const std::vector<WeightVector>& qs,
                        std::size_t j1, int k);

std::string chain_kind_name(ChainKind k);
ChainKind chain_kind_from_name(const std::string& name);

}  // namespace jenchain
