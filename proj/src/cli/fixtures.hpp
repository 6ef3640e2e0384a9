#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsurv/observable.hpp"
#include "cli/run_config.hpp"

namespace qsurv::cli {

/// Observable fixture: spectral data plus the state to measure. Matrices and
/// vectors are JSON arrays of [re, im] pairs.
struct ObservableFixture {
  SpectralObservable observable;
  DegenerateRotation rotation;
  ComplexMatrix rho;
  ComplexMatrix hamiltonian;  // defaults to the observable's own operator
};

ObservableFixture load_observable_fixture(const std::string& path);

/// Scattering model fixture: Hermitian h0 and hi.
struct ModelFixture {
  ComplexMatrix h0;
  ComplexMatrix hi;
  double hbar = 1.0;
};

ModelFixture load_model_fixture(const std::string& path);

}  // namespace qsurv::cli
