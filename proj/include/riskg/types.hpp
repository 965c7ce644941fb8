#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace riskg {

using Complex = std::complex<double>;
using VecR = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;

// Raised for invalid scenario parameters or malformed config files (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an iterative solver leaves its guaranteed regime (CLI exit code 3).
class SolverDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Position& a, const Position& b);

}  // namespace riskg
