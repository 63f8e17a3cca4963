// Copyright (C) 2026 the pencilops developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "pencilops/detail/numeric.hpp"
#include "pencilops/errors.hpp"
#include "pencilops/homogeneous.hpp"

namespace pencilops {

/// Matrix pencil stored as the pair (P0, P1) with the fixed sign convention
///     P(lambda, mu) = mu*P0 - lambda*P1.
/// Every constructor in this library returns pencils in this convention; a
/// global sign flip relative to other write-ups does not change the
/// eigenstructure. Immutable after construction.
class Pencil {
public:
    Pencil(cmat P0, cmat P1) : P0_(std::move(P0)), P1_(std::move(P1)) {
        if (P0_.rows() != P0_.cols() || P1_.rows() != P1_.cols() || P0_.rows() != P1_.rows())
            throw precondition_error("Pencil: P0 and P1 must be square of equal size");
        if (P0_.rows() < 1) throw precondition_error("Pencil: empty matrices");
    }

    int N() const { return static_cast<int>(P0_.rows()); }
    const cmat& P0() const { return P0_; }
    const cmat& P1() const { return P1_; }

    /// beta*P0 - alpha*P1, entrywise exactly this expression.
    cmat evaluate(cplx alpha, cplx beta) const { return beta * P0_ - alpha * P1_; }
    cmat evaluate(const HomogeneousPoint& pt) const { return evaluate(pt.lambda, pt.mu); }

    /// Swapped coefficients (P1, P0); linearizes the reversed polynomial.
    Pencil reversed() const { return Pencil(P1_, P0_); }

private:
    cmat P0_, P1_;
};

} // namespace pencilops
