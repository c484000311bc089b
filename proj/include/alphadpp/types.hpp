#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace alphadpp {

using Real = double;
using Complex = std::complex<Real>;

using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using MatrixXr = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXc = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using VectorXr = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Caller broke a documented precondition (bad argument, misaligned window, ...).
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A size guard on an exact (exponential-cost) algorithm was exceeded.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical consistency check failed (spectral bounds, orthonormality, ...).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace alphadpp
