// types.hpp: shared numeric aliases and the error hierarchy

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Largest supported atom count for the dense representation (dim 64, superoperator 4096^2).
inline constexpr int kMaxAtoms = 6;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad geometry, wrong dimensions, unknown names.
class InputError : public Error {
public:
    using Error::Error;
};

/// Configuration files, override paths, CLI values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Physics-level failure: degenerate spectra, dark states, non-PSD decay matrices.
class PhysicsError : public Error {
public:
    using Error::Error;
};

class DegeneracyError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class DarkStateError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class IntegratorError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace wqed
