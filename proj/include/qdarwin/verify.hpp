#ifndef QDARWIN_VERIFY_HPP
#define QDARWIN_VERIFY_HPP

#include <cstdint>
#include <string>

#include "qdarwin/channels.hpp"

namespace qdarwin::verify {

// Central tolerance record: one knob for numerical-environment drift.
struct Tolerances {
  double inequality = 1e-9;  // slack allowed on lemma inequalities
  double identity = 1e-10;   // residual allowed on exact identities
};

struct SearchBudget {
  int seeds = 512;
  int refine_iterations = 200;
};

// Certified lower bound on a constrained diamond-norm distance. The supremum
// may not be attained (the feasible set is not compact); only lower bounds
// are ever reported.
struct NormEstimate {
  double lower_bound = 0.0;
  std::string best_input;
  SearchBudget budget;
  std::string constraint;
};

// Lower bound on the mean-energy diamond norm  sup_{Tr(rho_1 n) <= nbar}
// ||(L0 - L1) (x) id [rho]||_1  via random pure seeds on the input (x) input
// pair, feasibility projection toward a vacuum-anchored state, and
// coordinate-wise local refinement of the best seed. search_levels restricts
// the explored support (any restriction keeps the bound valid).
NormEstimate ecd_lower_bound(const channels::QuantumChannel& ch0,
                             const channels::QuantumChannel& ch1, double nbar,
                             const SearchBudget& budget, std::uint64_t seed,
                             int search_levels = -1);

// Same estimator under the exponential-moment constraint
// Tr(rho_1 e^{omega n}) <= Omega.
NormEstimate exp_lower_bound(const channels::QuantumChannel& ch0,
                             const channels::QuantumChannel& ch1, double omega,
                             double Omega, const SearchBudget& budget,
                             std::uint64_t seed, int search_levels = -1);

struct LemmaReport {
  std::string lemma;
  int trials = 0;
  int skipped = 0;
  double worst_slack = 0.0;  // min over trials of (RHS - LHS)
  std::string worst_params;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  bool passed = false;
};

std::string to_json(const LemmaReport& report);

// Brute-force trials of the supporting lemmas at desk scale. Every check
// compares a certified lower bound on the harder side against the exact
// easier side, so a failure is a genuine counterexample, never a sampling
// artifact. Trials use per-index substreams of `seed` and are
// schedule-independent.

// 1/2 ||rho - sqrt(M) rho sqrt(M) / Tr(M rho)||_1 <= sqrt(1 - Tr(M rho)).
LemmaReport check_gentle_measurement(int trials, int dim, std::uint64_t seed,
                                     const Tolerances& tol = {});

// 1/2 ||rho - rho_TN||_1 <= sqrt((<n>_rho - <n>_rho_T) / d) for the
// renormalized level-d truncation of a bipartite state. Trials with
// Tr(Pi_d rho_A) = 0 are vacuous and counted as skipped.
LemmaReport check_fock_truncation(int trials, int dim_a, int dim_c,
                                  std::uint64_t seed, const Tolerances& tol = {});

// ||J - J_d||_1 <= 2 e^{-omega d / 2} for the input-side truncation of a
// modified Choi state, built at a working truncation D = d + max(20, 10/omega)
// whose tail contribution e^{-omega D} is added to the reported slack.
LemmaReport check_cj_truncation(int trials, std::uint64_t seed,
                                const Tolerances& tol = {});

// Mean-energy norm estimate <= d ||J_T(L0) - J_T(L1)||_1 + 4 sqrt(nbar / d)
// over a scanned set of truncations d.
LemmaReport check_ecd_choi_bound(int trials, std::uint64_t seed,
                                 const Tolerances& tol = {});

// Exponential-cutoff norm estimate <= d_tilde ||J(L0) - J(L1)||_1, plus the
// local-filtering identity |psi> = (C (x) I)|phi> and the operator-norm chain
// ||C||_inf^2 <= Tr(C^dag C) <= Omega / (1 - e^{-omega}) on feasible inputs.
LemmaReport check_expcut_choi_bound(int trials, std::uint64_t seed,
                                    const Tolerances& tol = {});

// Mutual information of separable modified Choi states is at most the Gibbs
// entropy at the same cutoff rate (in bits).
LemmaReport check_mutual_info_bound(int trials, std::uint64_t seed,
                                    const Tolerances& tol = {});

// Fixed-input homogeneity and triangle inequality of the estimator's
// objective, plus a positivity witness for distinct channels built from the
// vacuum or a vacuum-weighted mixture.
LemmaReport check_norm_axioms(int trials, std::uint64_t seed,
                              const Tolerances& tol = {});

// Measure-and-prepare construction: POVM completeness, effect positivity,
// and the product form of its modified Choi state.
LemmaReport check_povm_identity(int trials, std::uint64_t seed,
                                const Tolerances& tol = {});

} // namespace qdarwin::verify

#endif
