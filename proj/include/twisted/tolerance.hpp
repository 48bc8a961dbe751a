#pragma once

namespace twisted::tol {

inline constexpr double kAlgebraic = 1e-10;  // algebraic identities
inline constexpr double kSpectral = 1e-9;    // relative, singular values / norms
inline constexpr double kSupport = 1e-14;    // coefficients below this are dropped
inline constexpr double kMembership = 1e-12; // ideal membership, residual sign tests

}  // namespace twisted::tol
