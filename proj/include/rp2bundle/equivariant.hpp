#pragma once

#include <array>
#include <string>

#include <json.hpp>

#include "rp2bundle/scalar_modules.hpp"

namespace rp2bundle {

// Sign structure of the antipodal action on two-spin coefficient sections.
// k_tilde enters the block sign (-1)^(2S - J + k_tilde); S is fixed to 1/2
// (two_s = 1).
struct Z2ActionSpec {
  int k_tilde = 0;
  int two_s = 1;

  int parity() const { return ((k_tilde % 2) + 2) % 2; }
  // Sign of the action on a coefficient with total spin J (0 or 1).
  double block_sign(int j) const;
};

// Coefficient sections of the two-spin decomposition: a 4-component sampled
// section with components ordered (1,1), (1,0), (1,-1), (0,0).
struct SpinSection {
  SampledSection coeffs;

  explicit SpinSection(SampledSection c);
  static const std::array<std::string, 4>& labels();
  static int total_spin_of_component(int c) { return c < 3 ? 1 : 0; }
};

// (t.Psi)_{J,m}(r) = sign_J * Psi_{J,m}(-r); an involution.
SpinSection tau_act(const Z2ActionSpec& action, const SpinSection& psi);

// (Psi + t.Psi)/2; exactly fixed by tau_act.
SpinSection invariant_part(const Z2ActionSpec& action, const SpinSection& psi);

double tau_invariance_residual(const Z2ActionSpec& action, const SpinSection& psi);

struct ParityEntry {
  std::string label;
  double even_residual;
  double odd_residual;
  std::string classification;  // "even", "odd", "mixed", "zero"
};

struct ParityReport {
  std::array<ParityEntry, 4> entries;
  // "0" or "1" when a unique k_tilde makes the section invariant,
  // "indeterminate" when both do (zero blocks), "none" on conflict.
  std::string k_tilde_verdict;
  double tolerance;
};

// Classifies each coefficient's parity on the sample pairs and reports which
// k_tilde (if any) makes the whole section invariant.
ParityReport parity_audit(const SpinSection& psi, double tol = 1e-12);

struct SinglevaluednessReport {
  int k;
  int k_tilde;
  double single_residual;  // max ||F(r) - F(-r)||
  double anti_residual;    // max ||F(r) + F(-r)||
  std::string verdict;     // "singlevalued", "antivalued", "indeterminate", "neither"
  double tolerance;
};

// Reconstructs the ambient 10-dim section F(r) = sum_c Psi_c(r) B_c(r) from
// the coefficients and the transported basis in its K-parity realization
// (K with the parity of 2S uses the basis unchanged; the other parity flips
// the sign on the non-canonical lift of each antipodal pair).  Requires psi
// to be invariant under the k_tilde action.
SinglevaluednessReport singlevaluedness_audit(int k, int k_tilde, const SpinSection& psi,
                                              double tol = 1e-13);

void to_json(nlohmann::json& j, const ParityReport& report);
void to_json(nlohmann::json& j, const SinglevaluednessReport& report);

}  // namespace rp2bundle
