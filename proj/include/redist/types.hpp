#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace redist {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IMatrix = Eigen::MatrixXi;
using IVector = Eigen::VectorXi;

/// Invalid user input (mesh files, run configuration, argument ranges).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The time integration produced non-finite values and cannot continue.
class SolverFailure : public std::runtime_error {
public:
  SolverFailure(const std::string& msg, int element, int stage)
      : std::runtime_error(msg), element(element), stage(stage) {}
  int element = -1;
  int stage = -1;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

} // namespace redist
