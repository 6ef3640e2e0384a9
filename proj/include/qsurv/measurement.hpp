#pragma once

#include <vector>

#include "qsurv/observable.hpp"

namespace qsurv {

/// Projector P_alpha onto the alpha-th eigenspace.
ComplexMatrix build_projector(const SpectralObservable& obs, std::size_t alpha);

/// Outcome probabilities P_alpha = Tr(rho P_alpha). Values in (-tol, 0) are
/// clamped to 0; below -tol is an error. The vector sums to 1 within tol.
std::vector<double> measurement_probabilities(const ComplexMatrix& rho,
                                              const SpectralObservable& obs,
                                              double tol = kDefaultTol);

/// Detection operator M_alpha mapping the recorded eigenbasis onto its rotated
/// image inside the same eigenspace; M_alpha^dag M_alpha = P_alpha.
ComplexMatrix detection_operator(const SpectralObservable& obs, const DegenerateRotation& rot,
                                 std::size_t alpha);

struct PostMeasurement {
  double probability = 0.0;
  ComplexMatrix state;  // subensemble density matrix, trace 1
};

/// Subensemble state after recording outcome alpha and evolving with U_Q:
/// rho_alpha = U_Q M_alpha rho M_alpha^dag U_Q^dag / P_alpha.
/// Throws if the outcome has zero probability (P_alpha <= tol).
PostMeasurement post_measurement_state(const ComplexMatrix& rho, const SpectralObservable& obs,
                                       const DegenerateRotation& rot, std::size_t alpha,
                                       const ComplexMatrix& u_q, double tol = kDefaultTol);

/// Full-ensemble state sum_alpha P_alpha rho_alpha (outcome forgotten).
ComplexMatrix ensemble_after_measurement(const ComplexMatrix& rho, const SpectralObservable& obs,
                                         const DegenerateRotation& rot, const ComplexMatrix& u_q,
                                         double tol = kDefaultTol);

/// True iff the reconstructed operators commute within tol (max norm).
bool are_compatible(const SpectralObservable& a, const SpectralObservable& b, double tol);

/// Free evolution over dt in the eigenbasis of H_Q:
/// rho(dt) = sum_nm rho_nm e^{-i(w_n - w_m) dt} |phi_n><phi_m|.
ComplexMatrix evolve_density(const ComplexMatrix& rho, const ComplexMatrix& h_q, double dt,
                             double hbar, double tol = kDefaultTol);

}  // namespace qsurv
