#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace polyball {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<cplx>;

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: shape mismatches, out-of-range indices, malformed input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Point outside the polyball, divergent series, unreachable tolerance.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Kernel or Gram matrix is not positive semidefinite.
class PsdError : public Error {
 public:
  PsdError(const std::string& what, double min_eig)
      : Error(what), min_eig_(min_eig) {}
  double min_eig() const { return min_eig_; }

 private:
  double min_eig_;
};

}  // namespace polyball
