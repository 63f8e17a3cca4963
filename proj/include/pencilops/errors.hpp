// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pencilops {

/// Base class for all pencilops errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument violates a documented precondition (dimension, degree, list length, ...).
class precondition_error : public error {
public:
    using error::error;
};

/// A matrix required to have full (row/column) rank is numerically rank deficient.
/// The message names the deficient operand.
class rank_error : public error {
public:
    using error::error;
};

/// The coefficients share a common right kernel, so the stacked coefficient
/// matrix is rank deficient and no annihilator-based pencil exists.
class common_kernel_error : public rank_error {
public:
    using rank_error::rank_error;
};

/// A user-supplied annihilator fails one of its checks; the message names the
/// violated check.
class invalid_annihilator_error : public error {
public:
    using error::error;
};

/// Coefficient scaling is undefined for this input (wrong degree, zero outer
/// coefficient).
class scaling_error : public error {
public:
    using error::error;
};

/// A pencil was detected to be singular (det identically zero).
class singular_pencil_error : public error {
public:
    using error::error;
};

/// A matrix polynomial was detected to be singular (det identically zero).
class singular_polynomial_error : public error {
public:
    using error::error;
};

/// A constructive algorithm failed (inconsistent constraint system, no usable
/// anchor on the evaluation grid, ...). Reported, never silently patched.
class construction_error : public error {
public:
    using error::error;
};

/// The underlying dense eigensolver failed to converge.
class solver_error : public error {
public:
    using error::error;
};

/// File or stream input is malformed.
class io_error : public error {
public:
    using error::error;
};

} // namespace pencilops
