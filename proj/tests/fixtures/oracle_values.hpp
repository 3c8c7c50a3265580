#pragma once

// Frozen reference numbers for the closed-form code paths, produced by the
// oracle_dump program (tests/oracle_main.cpp) on this tree. Regenerate by
// running oracle_dump and pasting; never edit by hand.

namespace fixtures {

// Exact conditional photon excess per arm for the (alpha=4, beta=3) selection,
// from a 2d composite-Simpson tensor grid (9601 points/axis) over the joint
// post-selected density; independent of the kernel-based reduction.
// Index: 0 -> q0=10, 1 -> q0=20, 2 -> q0=40.
inline constexpr double kQ0[3] = {10.0, 20.0, 40.0};
inline constexpr double kExcessQuadR[3] = {3.9729316729528676, 3.9931522881414026,
                                           3.998282960399365};
inline constexpr double kExcessQuadL[3] = {-2.9408933534550812, -2.9850564732919906,
                                           -2.9962535397030479};

// Post-selection success probability from the same 2d grids (norm of the
// joint conditional state).
inline constexpr double kSuccessQuad[3] = {0.02029990626952816, 0.020074994140930065,
                                           0.020018749633793732};

// Mean of the single-pointer conditional state at q0=100, arm R, by adaptive
// Simpson quadrature of the position density.
inline constexpr double kPaperConditionalMeanR100 = 100.01999868759964;

// Emission-pattern intensity maximizer by dense scan (2,000,001 points across
// the full search window, then ternary refinement to 1e-10).
inline constexpr double kPeakCanonicalD1Lambda100 = 6.983283746562126;  // alpha=4, beta=3
inline constexpr double kPeakAlpha6Beta5D1Lambda200 = 10.983550464973835;

// Mean momentum of the mixed-phase pattern (alpha=4i, beta=3, lambda=100) by
// composite-Simpson quadrature of Im<psi|psi'> with a finite-difference
// derivative; no Fourier transform involved.
inline constexpr double kMeanPQuadAlpha4iBeta3D1 = -4.7997599999972173e-05;
inline constexpr double kMeanPQuadAlpha4iBeta3D2 = -9.5980801799831959e-05;

}  // namespace fixtures
