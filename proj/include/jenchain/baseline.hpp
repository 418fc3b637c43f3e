// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "jenchain/jensen.hpp"

namespace jenchain {

/// Exact min/max of the ratios p_i/q_i with complete argmin/argmax index sets
/// (0-based). The argmin multiplicity is the tie count the refinement chains
/// key on.
struct RatioExtremes {
  Rational m;
  Rational M;
  std::vector<std::size_t> argmin_set;
  std::vector<std::size_t> argmax_set;
};

RatioExtremes ratio_extremes(const WeightVector& p, const WeightVector& q);

/// Two-sided sandwich m*J(f,x,q) <= J(f,x,p) <= M*J(f,x,q).
struct DragomirReport {
  double J_p = 0.0;
  double J_q = 0.0;
  Rational m;
  Rational M;
  double tol = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;

  bool ok() const { return lower_ok && upper_ok; }
  nlohmann::json to_json() const;
};

DragomirReport check_dragomir(const ConvexFn& f, const PointVector& x, const WeightVector& p,
                              const WeightVector& q);

/// min_i{a_i/(b_i+g_i)} [J(b)+J(g)]  <=  J(a)  <=  2 max_i{a_i/(b_i+g_i)} J((b+g)/2).
struct ThreeWeightReport {
  Rational min_ratio;
  Rational max_ratio;
  double J_beta = 0.0;
  double J_gamma = 0.0;
  double J_mid = 0.0;
  double lower = 0.0;
  double J_alpha = 0.0;
  double upper = 0.0;
  double tol = 0.0;
  bool ok = false;

  nlohmann::json to_json() const;
};

ThreeWeightReport three_weight_bounds(const ConvexFn& f, const PointVector& x,
                                      const WeightVector& alpha, const WeightVector& beta,
                                      const WeightVector& gamma);

/// Terms for the correction-term bounds: J is the index set where alpha and
/// beta differ, m_star/M_star the extreme correction coefficients, H_J the
/// Jensen-type gap over the |J|+1 points {x_i : i in J} and the beta
/// barycenter. Empty J collapses everything to the plain m-bound.
struct HjTerms {
  std::vector<std::size_t> J_set;
  Rational m_star;
  Rational M_star;
  double H_J = 0.0;
};

struct HjBoundsReport {
  HjTerms terms;
  Rational m;
  double J_beta = 0.0;
  double lower = 0.0;
  double J_alpha = 0.0;
  double upper = 0.0;
  double tol = 0.0;
  bool ok = false;

  nlohmann::json to_json() const;
};

HjBoundsReport hj_correction_bounds(const ConvexFn& f, const PointVector& x,
                                    const WeightVector& alpha, const WeightVector& beta);

}  // namespace jenchain
