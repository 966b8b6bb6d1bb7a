#ifndef TREEAUT_TESTS_GOLDEN_EXPRESSIONS_HPP
#define TREEAUT_TESTS_GOLDEN_EXPRESSIONS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "treeaut/elements.hpp"
#include "treeaut/engine.hpp"

namespace treeaut_tests {

struct GoldenCase {
  std::string text;
  int degree;
  std::function<treeaut::TreeAut(treeaut::Engine&)> direct;
};

// Thirty expressions covering every grammar production, each paired with an
// independent construction of the same element through the library API.
inline std::vector<GoldenCase> golden_cases() {
  using namespace treeaut;
  std::vector<GoldenCase> cases;
  auto add = [&](std::string text, int degree, std::function<TreeAut(Engine&)> direct) {
    cases.push_back({std::move(text), degree, std::move(direct)});
  };
  add("tau", 2, [](Engine& e) { return tau(e, 2); });
  add("id", 3, [](Engine& e) { return e.identity(3); });
  add("iota", 3, [](Engine& e) { return iota(e, 3); });
  add("eps", 4, [](Engine& e) { return e.rigid(Perm::reversal(4)); });
  add("theta", 4, [](Engine& e) { return theta4(e); });
  add("tau^-1 * tau", 2, [](Engine& e) { return e.identity(2); });
  add("tau^2", 2, [](Engine& e) { return e.tau_pow_adic(NAdic(2, 2)); });
  add("tau^-3", 3, [](Engine& e) { return e.tau_pow_adic(NAdic(3, -3)); });
  add("tau^1/3", 4, [](Engine& e) { return e.tau_pow_adic(NAdic::ratio(4, 1, 3)); });
  add("tau^5/3", 4, [](Engine& e) { return e.tau_pow_adic(NAdic::ratio(4, 5, 3)); });
  add("(tau^2)^3", 2, [](Engine& e) { return e.tau_pow_adic(NAdic(2, 6)); });
  add("(tau * tau)^2", 3, [](Engine& e) { return e.tau_pow_adic(NAdic(3, 4)); });
  add("wreath(id, id, tau, id; (0 2))", 4,
      [](Engine& e) { return beta_family_transposition(e, NAdic(4, 0), NAdic(4, 0)); });
  add("wreath(tau, tau;)", 2, [](Engine& e) { return e.power_int(tau(e, 2), 2); });
  add("rigid((0 1 2))", 3, [](Engine& e) { return e.rigid(Perm::rotation(3)); });
  add("rigid((0 2)(1 3))", 4, [](Engine& e) { return e.rigid(Perm::rotation(4).power(2)); });
  add("conj(tau, iota)", 3, [](Engine& e) { return e.inverse(tau(e, 3)); });
  add("conj(tau, theta)", 4, [](Engine& e) { return e.inverse(tau(e, 4)); });
  add("conj(tau, lambda(3))", 2, [](Engine& e) { return e.power_int(tau(e, 2), 3); });
  add("conj(tau, lambda(9))", 4, [](Engine& e) { return e.power_int(tau(e, 4), 9); });
  add("lambda(5)", 2, [](Engine& e) { return lambda(e, NAdic(2, 5)); });
  add("psi(3)", 4, [](Engine& e) { return psi4(e, NAdic(4, 3)); });
  add("psi(-1)", 4, [](Engine& e) { return psi4(e, NAdic(4, -1)); });
  add("conj(tau^2, rigid((0 1)))", 2, [](Engine& e) {
    return e.conjugate(e.power_int(tau(e, 2), 2), e.rigid(Perm::from_cycles(2, {{0, 1}})));
  });
  add("tau * tau * tau", 2, [](Engine& e) { return e.tau_pow_adic(NAdic(2, 3)); });
  add("tau^2 * tau^-1", 4, [](Engine& e) { return tau(e, 4); });
  add("wreath(tau^-1, tau^-3, id, tau^-2; (0 2)(1 3))", 4,
      [](Engine& e) { return beta_family_half_turn(e, NAdic(4, 1), NAdic(4, 5)); });
  add("wreath(iota, tau; (0 1))", 2, [](Engine& e) {
    return e.wreath({iota(e, 2), tau(e, 2)}, Perm::rotation(2));
  });
  add("(tau * wreath(id, tau; (0 1)))^2", 2, [](Engine& e) {
    TreeAut inner = e.wreath({e.identity(2), tau(e, 2)}, Perm::rotation(2));
    return e.power_int(e.compose(tau(e, 2), inner), 2);
  });
  add("conj(conj(tau, iota), iota)", 2, [](Engine& e) { return tau(e, 2); });
  return cases;
}

}  // namespace treeaut_tests

#endif  // TREEAUT_TESTS_GOLDEN_EXPRESSIONS_HPP
