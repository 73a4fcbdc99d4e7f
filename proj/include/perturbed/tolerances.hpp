#pragma once

namespace perturbed {

// Absolute slack for evaluation noise (clamping, equality-to-zero tests).
inline constexpr double kTauNum = 1e-9;

// Extra slack granted to the triangle inequality when auditing axioms.
inline constexpr double kTauTri = 1e-9;

// Safety margin inflating sampled suprema before certificate validity
// tests. Sampling only lower-bounds a supremum; the certificate stores
// alpha_hat * (1 + kSigma).
inline constexpr double kSigma = 0.01;

}  // namespace perturbed
