// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mfchain {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Invalid arguments: out-of-range sites, bad chain sizes, mismatched
/// dimensions.
class DomainError : public std::domain_error {
public:
	explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when an evolved state has drifted off the unit sphere.
class IntegrityError : public std::runtime_error {
public:
	explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense problem too large to materialize.
class ResourceError : public std::runtime_error {
public:
	explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mfchain
