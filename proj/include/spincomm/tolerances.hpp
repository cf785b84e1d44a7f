#pragma once

#include <cstddef>
#include <string>

namespace spincomm {

// Numerical thresholds used across the library. Defaults are the contract
// values; `from_environment` applies overrides from SPINCOMM_TOLERANCES, a
// comma-separated list such as "unitarity=1e-9,control_zero=1e-10".
struct Tolerances {
  double hermiticity = 1e-12;       // relative to the matrix max-norm
  double unitarity = 1e-10;         // norm drift allowed by evolve
  double state_norm = 1e-9;         // unit-norm preconditions
  double support = 1e-9;            // weight outside Alice's subspace
  double degeneracy = 1e-9;         // singular-value gap treated as degenerate
  double arrival_floor = 1e-14;     // c_b below which no arrival state is reported
  double control_zero = 1e-12;      // |phi| below which a control ratio is 0/0
  double control_imag_abort = 1e-6; // imaginary residue that aborts derive_controls
  double psd = 1e-10;               // negative eigenvalue allowed in a density matrix
  std::size_t max_sector_dimension = 20000;

  static Tolerances from_environment();
  // Applies "key=value,key=value"; throws InvalidArgument on unknown keys.
  void apply_overrides(const std::string& spec);
  std::string describe() const;
};

const Tolerances& default_tolerances();

}  // namespace spincomm
