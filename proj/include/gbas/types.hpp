#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbas {

// All arithmetic is 64-bit: boundary membership is a sign test on
// pre-activations and would not survive single-precision drift.
using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Per-unit sign pattern, entries in {-1, 0, +1}.
using SignVector = Eigen::Matrix<int, Eigen::Dynamic, 1>;

/// Ordered set of unit indices (0-based within a layer).
using IndexSet = std::vector<Index>;

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gbas
