#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treeci/common.hpp"
#include "treeci/errors.hpp"
#include "treeci/joint_table.hpp"

namespace treeci {

// Zero-mean multivariate normal given by its covariance. Validation is
// strict: symmetry within 1e-12 (absolute), positive diagonal, and a
// successful Cholesky factorization.
class GaussianModel {
 public:
  GaussianModel(std::vector<std::string> variables, Eigen::MatrixXd covariance)
      : variables_(std::move(variables)), cov_(std::move(covariance)) {
    const auto n = static_cast<Eigen::Index>(variables_.size());
    for (const auto& v : variables_) {
      if (v.empty()) throw ModelError("GaussianModel: empty variable name");
      if (!positions_.emplace(v, positions_.size()).second) {
        throw ModelError("GaussianModel: duplicate variable '" + v + "'");
      }
    }
    if (cov_.rows() != n || cov_.cols() != n) {
      throw ModelError("GaussianModel: covariance must be n x n");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(cov_(i, i) > 0.0)) {
        throw ModelError("GaussianModel: diagonal must be positive");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!std::isfinite(cov_(i, j))) {
          throw ModelError("GaussianModel: covariance must be finite");
        }
        if (std::abs(cov_(i, j) - cov_(j, i)) > 1e-12) {
          throw ModelError("GaussianModel: covariance not symmetric");
        }
      }
    }
    if (n > 0) {
      Eigen::LLT<Eigen::MatrixXd> llt(cov_);
      if (llt.info() != Eigen::Success) {
        throw ModelError("GaussianModel: covariance not positive definite");
      }
    }
  }

  GaussianModel(std::vector<std::string> variables,
                const std::vector<std::vector<double>>& covariance)
      : GaussianModel(std::move(variables), to_matrix(covariance)) {}

  std::size_t variable_count() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept {
    return variables_;
  }
  const Eigen::MatrixXd& covariance() const noexcept { return cov_; }

  bool has_variable(const std::string& name) const noexcept {
    return positions_.count(name) != 0;
  }

  std::size_t position_of(const std::string& name) const {
    auto it = positions_.find(name);
    if (it == positions_.end()) {
      throw QueryError("unknown variable '" + name + "'");
    }
    return it->second;
  }

 private:
  static Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(m[i].size()) != n) {
        throw ModelError("GaussianModel: covariance rows must have length n");
      }
      for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j];
    }
    return out;
  }

  std::vector<std::string> variables_;
  Eigen::MatrixXd cov_;
  std::unordered_map<std::string, std::size_t> positions_;
};

// Correlation between x and y after conditioning on Z, computed from the
// precision matrix of the covariance restricted to {x,y} union Z:
// rho = -K_xy / sqrt(K_xx K_yy). Z empty reduces to the plain correlation.
inline double partial_correlation(const GaussianModel& g, const std::string& x,
                                  const std::string& y, const NameSet& zraw) {
  const NameSet z = normalized(zraw);
  if (x == y) throw QueryError("partial_correlation: x and y must differ");
  if (set_contains(z, x) || set_contains(z, y)) {
    throw QueryError("partial_correlation: Z must not contain x or y");
  }
  std::vector<std::size_t> idx;
  idx.push_back(g.position_of(x));
  idx.push_back(g.position_of(y));
  for (const auto& name : z) idx.push_back(g.position_of(name));
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd s(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      s(i, j) = g.covariance()(static_cast<Eigen::Index>(idx[i]),
                               static_cast<Eigen::Index>(idx[j]));
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) {
    throw ModelError("partial_correlation: restricted covariance singular");
  }
  const Eigen::MatrixXd prec = llt.solve(Eigen::MatrixXd::Identity(k, k));
  double rho = -prec(0, 1) / std::sqrt(prec(0, 0) * prec(1, 1));
  if (rho > 1.0) rho = 1.0;
  if (rho < -1.0) rho = -1.0;
  return rho;
}

// Largest |partial correlation| over pairs (x in X, y in Y) given Z. For a
// normal distribution X and Y are independent given Z exactly when all of
// these vanish.
inline double ci_deviation(const GaussianModel& g, const CIQuery& query) {
  const CIQuery q = detail::validated_ci_query(g, query);
  double max_abs = 0.0;
  for (const auto& x : q.x) {
    for (const auto& y : q.y) {
      const double r = std::abs(partial_correlation(g, x, y, q.z));
      if (r > max_abs) max_abs = r;
    }
  }
  return max_abs;
}

struct GaussianCiDecision {
  bool holds = false;
  double max_abs_pcor = 0.0;
};

inline GaussianCiDecision is_ci_gaussian(const GaussianModel& g,
                                         const CIQuery& q,
                                         double tol = kDefaultTol) {
  if (!(tol >= 0.0)) throw ParamError("is_ci_gaussian: tol must be >= 0");
  const double dev = ci_deviation(g, q);
  return {dev <= tol, dev};
}

}  // namespace treeci
