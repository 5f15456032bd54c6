// Copyright 2026 The ycurve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ycurve/errors.hpp"
#include "ycurve/numerics.hpp"
#include "ycurve/series.hpp"

namespace ycurve {

/// Ordinary least squares estimates with classical (homoskedastic) inference.
struct RegressionFit {
  std::vector<std::string> coefficient_names;
  std::vector<double> coefficients;  // [0] is the intercept
  std::vector<double> std_errors;
  std::vector<double> t_stats;       // NaN where the standard error is zero
  double r_squared = 0.0;
  std::size_t n_obs = 0;
  double rss = 0.0;
  double sigma2 = 0.0;               // RSS / (n - k)
  Series residuals;
  std::vector<double> fitted;
};

struct ProbitFit {
  std::vector<std::string> coefficient_names;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_max_norm = 0.0;
  Series fitted_probabilities;
  // Value after each accepted step, starting point first. Nondecreasing up
  // to summation rounding (64 ulp of the running value).
  std::vector<double> log_likelihood_trace;
};

namespace detail {

inline void check_design(std::span<const double> y, const Matrix& x,
                         const std::vector<std::string>& names,
                         std::span<const QuarterId> index, std::string_view model) {
  const std::string who = "model '" + std::string(model) + "'";
  if (y.size() != x.rows() || index.size() != x.rows()) {
    throw DomainError("estimators", who + ": y, X and index lengths differ");
  }
  if (names.size() != x.cols()) {
    throw DomainError("estimators", who + ": expected " + std::to_string(x.cols()) +
                                        " coefficient names");
  }
  if (x.rows() <= x.cols()) {
    throw InsufficientDataError("estimators", who + ": " + std::to_string(x.rows()) +
                                                  " rows for " + std::to_string(x.cols()) +
                                                  " coefficients");
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    if (x(r, 0) != 1.0) throw DomainError("estimators", who + ": first column must be the intercept");
  }
  for (std::size_t j = 1; j < x.cols(); ++j) {
    bool all_zero = true;
    for (std::size_t r = 0; r < x.rows() && all_zero; ++r) all_zero = x(r, j) == 0.0;
    if (all_zero) {
      throw SingularityError("estimators", who + ": regressor '" + names[j] + "' is identically zero");
    }
  }
}

}  // namespace detail

/// OLS of y on X (leading intercept column). Rows are labelled by index.
inline RegressionFit ols_fit(std::span<const double> y, const Matrix& x,
                             std::vector<std::string> names, std::span<const QuarterId> index,
                             std::string_view model = "ols") {
  detail::check_design(y, x, names, index, model);
  const std::size_t n = x.rows();
  const std::size_t k = x.cols();

  const Matrix xtx = gram(x);
  std::vector<double> beta;
  Matrix xtx_inv(k, k);
  try {
    const Cholesky chol(xtx);
    beta = chol.solve(transpose_times(x, y));
    xtx_inv = chol.inverse();
  } catch (const SingularityError& e) {
    throw SingularityError("estimators", "model '" + std::string(model) +
                                             "': singular design, regressors are collinear (" + e.what() + ")");
  }

  RegressionFit fit;
  fit.coefficient_names = std::move(names);
  fit.n_obs = n;
  fit.fitted = times(x, beta);

  std::vector<Observation> resid;
  resid.reserve(n);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  double tss = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double e = y[r] - fit.fitted[r];
    fit.rss += e * e;
    tss += (y[r] - mean) * (y[r] - mean);
    resid.push_back({index[r], e});
  }
  fit.residuals = Series("residuals(" + std::string(model) + ")", Unit::percent_growth, std::move(resid));
  // A constant y leaves nothing for the regressors to explain.
  fit.r_squared = tss > 0.0 ? std::clamp(1.0 - fit.rss / tss, 0.0, 1.0) : 0.0;
  fit.sigma2 = fit.rss / static_cast<double>(n - k);

  fit.coefficients = beta;
  for (std::size_t j = 0; j < k; ++j) {
    const double se = std::sqrt(std::max(0.0, fit.sigma2 * xtx_inv(j, j)));
    fit.std_errors.push_back(se);
    fit.t_stats.push_back(se > 0.0 ? beta[j] / se : std::numeric_limits<double>::quiet_NaN());
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Probit

/// Σ y ln Φ(xᵀβ) + (1 − y) ln(1 − Φ(xᵀβ)).
inline double probit_log_likelihood(std::span<const double> y, const Matrix& x,
                                    std::span<const double> beta) {
  const auto index = times(x, beta);
  double ll = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    ll += std_normal_log_cdf(y[r] == 1.0 ? index[r] : -index[r]);
  }
  return ll;
}

namespace detail {

// Per-row first derivative of the log-likelihood in the index z = xᵀβ:
// λ = q φ(qz)/Φ(qz) with q = 2y − 1. The second derivative is −λ(λ + z).
inline double probit_score(double y, double z) {
  return y == 1.0 ? std_normal_hazard_lower(z) : -std_normal_hazard_lower(-z);
}

}  // namespace detail

inline std::vector<double> probit_gradient(std::span<const double> y, const Matrix& x,
                                           std::span<const double> beta) {
  const auto index = times(x, beta);
  std::vector<double> score(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) score[r] = detail::probit_score(y[r], index[r]);
  return transpose_times(x, score);
}

/// Negative Hessian of the log-likelihood (the observed information).
inline Matrix probit_information(std::span<const double> y, const Matrix& x,
                                 std::span<const double> beta) {
  const auto index = times(x, beta);
  Matrix info(x.cols(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const double lambda = detail::probit_score(y[r], index[r]);
    const double w = lambda * (lambda + index[r]);
    for (std::size_t i = 0; i < x.cols(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) info(i, j) += w * x(r, i) * x(r, j);
    }
  }
  for (std::size_t i = 0; i < x.cols(); ++i) {
    for (std::size_t j = 0; j < i; ++j) info(j, i) = info(i, j);
  }
  return info;
}

struct ProbitOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 100;
  double divergence_bound = 1e4;
  int max_step_halvings = 50;
};

/// Probit maximum likelihood by Newton–Raphson with step halving.
inline ProbitFit probit_fit(std::span<const double> y, const Matrix& x,
                            std::vector<std::string> names, std::span<const QuarterId> index,
                            std::string_view model = "probit", const ProbitOptions& options = {}) {
  detail::check_design(y, x, names, index, model);
  const std::string who = "model '" + std::string(model) + "'";
  std::size_t ones = 0;
  for (double v : y) {
    if (v != 0.0 && v != 1.0) throw DomainError("estimators", who + ": outcome must be 0 or 1");
    if (v == 1.0) ++ones;
  }
  if (ones == 0 || ones == y.size()) {
    throw DegenerateDataError("estimators", who + ": outcome has a single class (" +
                                                std::to_string(ones) + " ones in " +
                                                std::to_string(y.size()) + " rows)");
  }
  const auto separation = [&](const std::string& detail) {
    return SeparationError("estimators", who + ": " + detail +
                                             "; the classes appear linearly separable by the "
                                             "regressors, so the probit MLE does not exist");
  };

  std::vector<double> beta(x.cols(), 0.0);
  beta[0] = std_normal_inv_cdf(static_cast<double>(ones) / static_cast<double>(y.size()));

  ProbitFit fit;
  double ll = probit_log_likelihood(y, x, beta);
  fit.log_likelihood_trace.push_back(ll);
  std::vector<double> grad = probit_gradient(y, x, beta);
  auto max_norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
  };

  int iter = 0;
  while (max_norm(grad) >= options.gradient_tolerance) {
    if (iter == options.max_iterations) {
      throw separation("no convergence after " + std::to_string(iter) + " iterations");
    }
    std::vector<double> step;
    try {
      step = solve_spd(probit_information(y, x, beta), grad);
    } catch (const SingularityError& e) {
      throw SingularityError("estimators", who + ": information matrix singular (" + e.what() + ")");
    }

    // Near the optimum the likelihood is flat to within summation rounding;
    // a step that loses no more than that still counts as ascent.
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(ll));
    double scale = 1.0;
    std::vector<double> trial(beta.size());
    double trial_ll = -std::numeric_limits<double>::infinity();
    int halvings = 0;
    for (; halvings <= options.max_step_halvings; ++halvings, scale *= 0.5) {
      for (std::size_t j = 0; j < beta.size(); ++j) trial[j] = beta[j] + scale * step[j];
      trial_ll = probit_log_likelihood(y, x, trial);
      if (trial_ll >= ll - slack) break;
    }
    if (halvings > options.max_step_halvings) {
      // No ascent direction left at working precision.
      break;
    }
    beta = trial;
    ll = trial_ll;
    fit.log_likelihood_trace.push_back(ll);
    ++iter;
    for (double b : beta) {
      if (std::abs(b) > options.divergence_bound) {
        throw separation("coefficients diverged past " + std::to_string(options.divergence_bound));
      }
    }
    grad = probit_gradient(y, x, beta);
  }

  fit.gradient_max_norm = max_norm(grad);
  fit.converged = fit.gradient_max_norm < options.gradient_tolerance;
  if (!fit.converged) {
    throw separation("line search stalled with gradient " + std::to_string(fit.gradient_max_norm));
  }

  // A finite optimum that classifies every row strictly correctly means the
  // gradient merely underflowed along a separating direction.
  const auto z = times(x, beta);
  bool strictly_separated = true;
  for (std::size_t r = 0; r < x.rows() && strictly_separated; ++r) {
    strictly_separated = (y[r] == 1.0) ? z[r] > 0.0 : z[r] < 0.0;
  }
  if (strictly_separated) throw separation("fitted index separates every observation");

  Matrix cov(x.cols(), x.cols());
  try {
    cov = Cholesky(probit_information(y, x, beta)).inverse();
  } catch (const SingularityError& e) {
    throw SingularityError("estimators", who + ": information matrix singular (" + e.what() + ")");
  }

  fit.coefficient_names = std::move(names);
  fit.coefficients = beta;
  for (std::size_t j = 0; j < beta.size(); ++j) fit.std_errors.push_back(std::sqrt(cov(j, j)));
  fit.log_likelihood = ll;
  fit.iterations = iter;

  // Keep probabilities strictly inside (0, 1).
  constexpr double lo = std::numeric_limits<double>::min();
  const double hi = std::nextafter(1.0, 0.0);
  std::vector<Observation> probs;
  probs.reserve(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    probs.push_back({index[r], std::clamp(std_normal_cdf(z[r]), lo, hi)});
  }
  fit.fitted_probabilities = Series("probability(" + std::string(model) + ")", Unit::level,
                                    std::move(probs));
  return fit;
}

/// ∂P/∂x_j = β_j φ(xᵀβ) at the evaluation point `at`.
inline double probit_marginal_effect(std::span<const double> coefficients,
                                     std::span<const double> at, std::size_t coefficient_index) {
  if (at.size() != coefficients.size()) {
    throw DomainError("estimators", "marginal effect point has " + std::to_string(at.size()) +
                                        " entries, model has " +
                                        std::to_string(coefficients.size()));
  }
  if (coefficient_index >= coefficients.size()) {
    throw DomainError("estimators", "coefficient index out of range");
  }
  double z = 0.0;
  for (std::size_t j = 0; j < at.size(); ++j) z += at[j] * coefficients[j];
  return coefficients[coefficient_index] * std_normal_pdf(z);
}

inline double probit_marginal_effect(const ProbitFit& fit, std::span<const double> at,
                                     std::size_t coefficient_index) {
  return probit_marginal_effect(fit.coefficients, at, coefficient_index);
}

}  // namespace ycurve
