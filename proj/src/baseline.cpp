// SPDX-License-Identifier: MIT
#include "jenchain/baseline.hpp"

#include <cmath>

#include "jenchain/error.hpp"

namespace jenchain {

namespace {

void require_positive_denoms(const WeightVector& q, const char* who) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) throw ZeroDenominator(std::string(who) + ": q[" + std::to_string(i + 1) + "] = 0");
    if (q[i] < 0) throw InvariantViolation(std::string(who) + ": q must be strictly positive");
  }
}

nlohmann::json index_set_json(const std::vector<std::size_t>& s) {
  nlohmann::json a = nlohmann::json::array();
  for (auto i : s) a.push_back(i + 1);  // 1-based in reports
  return a;
}

}  // namespace

RatioExtremes ratio_extremes(const WeightVector& p, const WeightVector& q) {
  require_same_length(p.size(), q.size(), "ratio_extremes");
  if (!p.nonnegative()) throw InvariantViolation("ratio_extremes: p must be nonnegative");
  require_positive_denoms(q, "ratio_extremes");

  RatioExtremes out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational r = p[i] / q[i];
    if (i == 0 || r < out.m) {
      out.m = r;
      out.argmin_set.clear();
    }
    if (r == out.m) out.argmin_set.push_back(i);
    if (i == 0 || r > out.M) {
      out.M = r;
      out.argmax_set.clear();
    }
    if (r == out.M) out.argmax_set.push_back(i);
  }
  return out;
}

DragomirReport check_dragomir(const ConvexFn& f, const PointVector& x, const WeightVector& p,
                              const WeightVector& q) {
  RatioExtremes ext = ratio_extremes(p, q);
  DragomirReport rep;
  rep.m = ext.m;
  rep.M = ext.M;
  rep.J_p = jensen(f, x, p);
  rep.J_q = jensen(f, x, q);
  rep.tol = 1e-9 * (1.0 + std::fabs(rep.J_p) + std::fabs(rep.J_q));
  rep.lower_ok = rep.J_p >= to_double(ext.m) * rep.J_q - rep.tol;
  rep.upper_ok = to_double(ext.M) * rep.J_q >= rep.J_p - rep.tol;
  return rep;
}

nlohmann::json DragomirReport::to_json() const {
  return nlohmann::json{{"J_p", J_p},
                        {"J_q", J_q},
                        {"m", format_rational(m)},
                        {"M", format_rational(M)},
                        {"tol", tol},
                        {"lower_ok", lower_ok},
                        {"upper_ok", upper_ok}};
}

ThreeWeightReport three_weight_bounds(const ConvexFn& f, const PointVector& x,
                                      const WeightVector& alpha, const WeightVector& beta,
                                      const WeightVector& gamma) {
  require_same_length(alpha.size(), beta.size(), "three_weight_bounds");
  require_same_length(alpha.size(), gamma.size(), "three_weight_bounds");
  require_same_length(alpha.size(), x.size(), "three_weight_bounds");

  ThreeWeightReport rep;
  std::vector<Rational> mid_entries(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    Rational denom = beta[i] + gamma[i];
    if (denom == 0)
      throw ZeroDenominator("three_weight_bounds: beta[" + std::to_string(i + 1) + "] + gamma[" +
                            std::to_string(i + 1) + "] = 0");
    Rational r = alpha[i] / denom;
    if (i == 0 || r < rep.min_ratio) rep.min_ratio = r;
    if (i == 0 || r > rep.max_ratio) rep.max_ratio = r;
    mid_entries[i] = denom / 2;
  }
  WeightVector mid = WeightVector::normalized(std::move(mid_entries));

  rep.J_beta = jensen(f, x, beta);
  rep.J_gamma = jensen(f, x, gamma);
  rep.J_mid = jensen(f, x, mid);
  rep.J_alpha = jensen(f, x, alpha);
  rep.lower = to_double(rep.min_ratio) * (rep.J_beta + rep.J_gamma);
  rep.upper = 2.0 * to_double(rep.max_ratio) * rep.J_mid;
  rep.tol = 1e-9 * (1.0 + std::fabs(rep.J_alpha) + std::fabs(rep.lower) + std::fabs(rep.upper));
  rep.ok = rep.lower - rep.tol <= rep.J_alpha && rep.J_alpha <= rep.upper + rep.tol;
  return rep;
}

nlohmann::json ThreeWeightReport::to_json() const {
  return nlohmann::json{{"min_ratio", format_rational(min_ratio)},
                        {"max_ratio", format_rational(max_ratio)},
                        {"J_beta", J_beta},
                        {"J_gamma", J_gamma},
                        {"J_mid", J_mid},
                        {"lower", lower},
                        {"J_alpha", J_alpha},
                        {"upper", upper},
                        {"tol", tol},
                        {"ok", ok}};
}

HjBoundsReport hj_correction_bounds(const ConvexFn& f, const PointVector& x,
                                    const WeightVector& alpha, const WeightVector& beta) {
  require_same_length(alpha.size(), beta.size(), "hj_correction_bounds");
  require_same_length(alpha.size(), x.size(), "hj_correction_bounds");
  require_positive_denoms(beta, "hj_correction_bounds");
  if (!alpha.nonnegative()) throw InvariantViolation("hj_correction_bounds: alpha must be nonnegative");

  HjBoundsReport rep;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    Rational r = alpha[i] / beta[i];
    if (i == 0 || r < rep.m) rep.m = r;
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] != beta[i]) rep.terms.J_set.push_back(i);
  }

  rep.J_beta = jensen(f, x, beta);
  rep.J_alpha = jensen(f, x, alpha);

  if (rep.terms.J_set.empty()) {
    // alpha == beta: collapse to the plain m-bound (m = 1, equality).
    rep.terms.m_star = 0;
    rep.terms.M_star = 0;
    rep.terms.H_J = 0.0;
  } else {
    bool first = true;
    for (std::size_t i : rep.terms.J_set) {
      Rational c = alpha[i] - rep.m * beta[i];
      if (first || c < rep.terms.m_star) rep.terms.m_star = c;
      if (first || c > rep.terms.M_star) rep.terms.M_star = c;
      first = false;
    }
    if (rep.m < rep.terms.m_star) rep.terms.m_star = rep.m;
    if (rep.m > rep.terms.M_star) rep.terms.M_star = rep.m;

    // Jensen-type gap over {x_i : i in J} plus the beta barycenter, uniform weights.
    Rational b_beta = barycenter(x, beta);
    const auto card = static_cast<long long>(rep.terms.J_set.size()) + 1;
    double sum_f = f.eval(to_double(b_beta));
    Rational sum_x = b_beta;
    for (std::size_t i : rep.terms.J_set) {
      sum_f += f.eval(to_double(x[i]));
      sum_x += x[i];
    }
    Rational mean_x = sum_x / card;
    rep.terms.H_J = sum_f / static_cast<double>(card) - f.eval(to_double(mean_x));
  }

  const double card = static_cast<double>(rep.terms.J_set.size()) + 1.0;
  double lo_corr = to_double(rep.terms.m_star) * card * rep.terms.H_J;
  double hi_corr = to_double(rep.terms.M_star) * card * rep.terms.H_J;
  double m_bound = to_double(rep.m) * rep.J_beta;
  rep.lower = m_bound + lo_corr;
  rep.upper = m_bound + hi_corr;
  rep.tol = 1e-9 * (1.0 + std::fabs(rep.J_alpha) + std::fabs(m_bound) + std::fabs(lo_corr) +
                    std::fabs(hi_corr));
  rep.ok = rep.lower - rep.tol <= rep.J_alpha && rep.J_alpha <= rep.upper + rep.tol;
  return rep;
}

nlohmann::json HjBoundsReport::to_json() const {
  return nlohmann::json{{"J_set", index_set_json(terms.J_set)},
                        {"m", format_rational(m)},
                        {"m_star", format_rational(terms.m_star)},
                        {"M_star", format_rational(terms.M_star)},
                        {"H_J", terms.H_J},
                        {"J_beta", J_beta},
                        {"lower", lower},
                        {"J_alpha", J_alpha},
                        {"upper", upper},
                        {"tol", tol},
                        {"ok", ok}};
}

}  // namespace jenchain
