#ifndef TREEAUT_ELEMENTS_HPP
#define TREEAUT_ELEMENTS_HPP

#include <string>
#include <vector>

#include "treeaut/engine.hpp"
#include "treeaut/nadic.hpp"
#include "treeaut/perm.hpp"

namespace treeaut {

// The n-ary adding machine: tau = (id, ..., id, tau) sigma with
// sigma = (0, 1, ..., n-1). Acts on vertex words as base-n increment.
TreeAut tau(Engine& engine, int degree);

// The rigid reversing involution eps = (0, n-1)(1, n-2)...
TreeAut eps(Engine& engine, int degree);

// iota = (iota, ..., iota) eps; conjugates tau to its inverse.
TreeAut iota(Engine& engine, int degree);

// theta = (theta, theta tau^{-1}, theta tau^{-1}, theta tau^{-1}) (1 3) on
// the 4-ary tree; conjugates tau to its inverse.
TreeAut theta4(Engine& engine);

// Solution alpha of tau^alpha = tau^xi for any unit exponent xi: the
// activity sends j to the residue of j*xi, the sections are alpha tau^{mu_i}
// with mu_i = i*(xi - res(xi))/n + sum_{k<i} carry(k*xi, xi). Throws
// std::domain_error when xi is not a unit.
TreeAut conjugator_to_power(Engine& engine, const NAdic& xi);

// The inactive normalizer element lambda_xi for a one-unit xi: sections
// lambda_xi tau^{i(xi-1)/n}; conjugates tau to tau^xi. Throws
// std::domain_error unless xi = 1 mod n.
TreeAut lambda(Engine& engine, const NAdic& xi);

// psi_eta on the 4-ary tree: lambda_eta when eta = 1 mod 4, theta
// lambda_{-eta} when eta = 3 mod 4; conjugates tau to tau^eta. Throws
// std::domain_error when eta is not a unit mod 4.
TreeAut psi4(Engine& engine, const NAdic& eta);

// Inactive alpha with tau^alpha = lambda_xi tau^rho. Requires one-units
// xi != 1 and rho, and degree odd or 2n dividing xi - 1; otherwise throws
// std::domain_error (the recursion has no one-unit continuation).
TreeAut build_normalizer_conjugator(Engine& engine, int degree, const NAdic& xi,
                                    const NAdic& rho);

// First-level conjugator for beta with activity exactly the rotation:
// alpha = (id, beta_0^{-1}, (beta_0 beta_1)^{-1}, ...) with
// beta^alpha = (id, ..., id, beta_0 ... beta_{n-1}) sigma. Throws
// std::invalid_argument when the activity is not the rotation.
TreeAut normal_form_conjugator(Engine& engine, TreeAut beta);

struct ConjugationReport {
  // Exponents x for which [beta, beta^{tau^x}] = id was checked.
  std::vector<int> screening_exponents;
  bool screening_passed = false;
  // k when beta was first replaced by beta^k to bring the activity to the
  // rotation; 1 when no power reduction was needed.
  int power_reduction = 1;
  // Description of the final exponent correction, empty when none.
  std::string exponent_adjustment;
  int stages = 0;
  bool certified = false;
  int certified_depth = 0;
  std::vector<std::string> notes;
};

struct ConjugationResult {
  TreeAut conjugator;
  ConjugationReport report;
};

// Searches for a conjugator carrying beta to tau, certifying agreement to
// the requested depth. The activity of beta must be sigma^s with s coprime
// to the degree. Commutation of beta with its tau-conjugates is screened
// first; the outcome is recorded in the report and the search proceeds
// either way, since the hypothesis is sufficient but not necessary. A stage
// whose deep element is not an n-cycle throws std::domain_error (the input
// is then not conjugate to tau).
ConjugationResult conjugate_to_tau(Engine& engine, TreeAut beta, int levels);

// The centralizer family of tau^2 on the 4-ary tree:
// (tau^{m0}, tau^{m1}, tau^{m0+c0}, tau^{m1+c1}) sg, where c_i is the carry
// of the image of i under sg against 2. Requires sg to commute with the
// half turn (0 2)(1 3); throws std::invalid_argument otherwise.
TreeAut centralizer_tau2_element(Engine& engine, const NAdic& m0, const NAdic& m1,
                                 const Perm& sg);

// The normalizer element (psi_{2m0+1}, psi_{2m1+1}, psi_{2m0+1} tau^{m0},
// psi_{2m1+1} tau^{m1}) of the group generated by the diagonal family
// (tau^{a}, tau^{b}, tau^{a}, tau^{b}) and tau^2.
TreeAut normalizer_hdot_element(Engine& engine, const NAdic& m0, const NAdic& m1);

// The 4-ary family with activity (0 2):
// (tau^{m/d}, tau^{t1/d}, tau^{(1-m)/d}, tau^{t1/d}) (0 2) with d = 1 - 2m.
TreeAut beta_family_transposition(Engine& engine, const NAdic& m, const NAdic& t1);

// The 4-ary family with activity (0 2)(1 3):
// (tau^{m0/d}, tau^{((xi1-1)/2+m0)/d}, tau^{(1-m0)/d}, tau^{((xi1+1)/2-m0)/d})
// (0 2)(1 3) with d = 1 - 2m0; the products of opposite sections are
// tau^{1/d} and tau^{xi1/d}.
TreeAut beta_family_half_turn(Engine& engine, const NAdic& m0, const NAdic& xi1);

}  // namespace treeaut

#endif  // TREEAUT_ELEMENTS_HPP
