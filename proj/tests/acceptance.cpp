// Acceptance gate: fifteen end-to-end criteria, one verdict line each.
// Exits nonzero if any criterion fails. Everything is checked exactly.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <sys/wait.h>
#include <utility>
#include <vector>

#include "golden_expressions.hpp"
#include "treeaut/elements.hpp"
#include "treeaut/engine.hpp"
#include "treeaut/exprlang.hpp"
#include "treeaut/nadic.hpp"
#include "treeaut/perm.hpp"
#include "treeaut/relations.hpp"

using namespace treeaut;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body();
  } catch (const std::exception& ex) {
    note = std::string(" (") + ex.what() + ")";
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::printf("CRITERION %2d %s %s [%lld ms]%s\n", number, ok ? "PASS" : "FAIL", label.c_str(),
              static_cast<long long>(ms), note.c_str());
  if (!ok) ++failures;
}

bool is_equal(Engine& eng, TreeAut a, TreeAut b, std::size_t budget = 10000) {
  return eng.equal_bisim(a, b, budget).kind == BisimResult::Kind::Equal;
}

// An adding machine built as a plain recursive element, deliberately kept
// outside the exponent-indexed family so its words never fold. Checks against
// it exercise the bisimulation rather than exponent bookkeeping.
TreeAut independent_odometer(Engine& eng, int n) {
  return eng.recursive_element(
      "acceptance-odometer:" + std::to_string(n), Perm::rotation(n), [&eng, n](TreeAut self) {
        std::vector<TreeAut> children(static_cast<std::size_t>(n - 1), eng.identity(n));
        children.push_back(self);
        return eng.wreath(children, Perm::rotation(n));
      });
}

bool criterion_diagonal_power() {
  for (int n = 2; n <= 6; ++n) {
    Engine eng;
    TreeAut t = tau(eng, n);
    std::vector<TreeAut> diagonal(static_cast<std::size_t>(n), t);
    if (!is_equal(eng, eng.power_int(t, n), eng.wreath(diagonal, Perm(n)))) return false;
  }
  return true;
}

bool criterion_state_graph() {
  for (int n = 2; n <= 6; ++n) {
    Engine eng;
    TreeAut t = tau(eng, n);
    StateGraph graph = eng.state_graph(t);
    if (!graph.complete || graph.states.size() != 2) return false;
    if (graph.states[0] != t.id || graph.states[1] != eng.identity(n).id) return false;
    if (n == 2) {
      if (graph.edges.size() != 4) return false;
      const StateGraph::Edge expected[4] = {{0, 0, 1, 1}, {0, 1, 0, 0}, {1, 0, 0, 1}, {1, 1, 1, 1}};
      for (int k = 0; k < 4; ++k) {
        const StateGraph::Edge& e = graph.edges[static_cast<std::size_t>(k)];
        if (e.from != expected[k].from || e.input != expected[k].input ||
            e.output != expected[k].output || e.to != expected[k].to) {
          return false;
        }
      }
    }
  }
  return true;
}

bool criterion_adic_powers() {
  for (int n : {2, 3, 4}) {
    Engine eng;
    TreeAut indep = independent_odometer(eng, n);
    for (long long m = -8; m <= 8; ++m) {
      if (!is_equal(eng, eng.tau_pow_adic(NAdic(n, m)), eng.power_int(indep, m), 100000)) {
        return false;
      }
    }
  }
  Engine eng;
  TreeAut third = eng.tau_pow_adic(NAdic::ratio(4, 1, 3));
  if (!is_equal(eng, eng.power_int(third, 3), tau(eng, 4))) return false;
  return is_equal(eng, eng.power_int(independent_odometer(eng, 4), 1),
                  eng.tau_pow_adic(NAdic(4, 1)), 100000);
}

bool criterion_delta_suite() {
  for (int n = 2; n <= 12; ++n) {
    Engine eng;
    if (!verify(eng, "delta", {{"n", std::to_string(n)}}).passed()) return false;
  }
  return true;
}

bool criterion_conjugators() {
  for (int n : {2, 3, 4, 5}) {
    Engine eng;
    TreeAut t = tau(eng, n);
    const long long xis[3] = {1 + n, 1 + 2 * n, (1 + n) * static_cast<long long>(1 + n)};
    for (long long xi : xis) {
      TreeAut moved = eng.conjugate(t, lambda(eng, NAdic(n, xi)));
      if (!eng.equal_to_depth(moved, eng.tau_pow_adic(NAdic(n, xi)), 10)) return false;
    }
    if (!is_equal(eng, eng.conjugate(t, iota(eng, n)), eng.inverse(t))) return false;
  }
  Engine eng;
  TreeAut t = tau(eng, 4);
  if (!is_equal(eng, eng.conjugate(t, theta4(eng)), eng.inverse(t))) return false;
  const NAdic etas[3] = {NAdic(4, 3), NAdic(4, -1), NAdic::ratio(4, 1, 3)};
  for (const NAdic& eta : etas) {
    TreeAut moved = eng.conjugate(t, psi4(eng, eta));
    if (!eng.equal_to_depth(moved, eng.tau_pow_adic(eta), 10)) return false;
  }
  return true;
}

bool criterion_commutator_formula() {
  Engine eng;
  const int n = 4;
  TreeAut t = tau(eng, n);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long long> pick_num(-9, 9);
  const long long dens[4] = {1, 3, 5, 7};
  std::uniform_int_distribution<int> pick_den(0, 3);
  std::uniform_int_distribution<long long> pick_k(-5, 5);
  int checked = 0;
  while (checked < 10) {
    long long num = pick_num(rng);
    long long k = pick_k(rng);
    if (num == 0 || k == 0) continue;
    NAdic eta = NAdic::ratio(n, num, dens[pick_den(rng)]);
    NAdic theta(n, 1 + n * k);
    TreeAut lhs = eng.commutator(eng.tau_pow_adic(eta), lambda(eng, theta));
    TreeAut rhs = eng.tau_pow_adic(eta * (theta - NAdic(n, 1)));
    if (!eng.equal_to_depth(lhs, rhs, 8)) return false;
    ++checked;
  }
  return true;
}

bool criterion_normalizer_conjugator() {
  {
    Engine eng;
    TreeAut alpha = build_normalizer_conjugator(eng, 3, NAdic(3, 4), NAdic(3, 1));
    TreeAut expected =
        eng.compose(lambda(eng, NAdic(3, 4)), eng.tau_pow_adic(NAdic(3, 1)));
    if (!eng.equal_to_depth(eng.conjugate(tau(eng, 3), alpha), expected, 6)) return false;
  }
  {
    Engine eng;
    TreeAut alpha = build_normalizer_conjugator(eng, 2, NAdic(2, 5), NAdic(2, 1));
    TreeAut expected =
        eng.compose(lambda(eng, NAdic(2, 5)), eng.tau_pow_adic(NAdic(2, 1)));
    if (!eng.equal_to_depth(eng.conjugate(tau(eng, 2), alpha), expected, 6)) return false;
  }
  Engine eng;
  try {
    build_normalizer_conjugator(eng, 2, NAdic(2, 3), NAdic(2, 1));
    return false;
  } catch (const std::domain_error&) {
    return true;
  }
}

bool criterion_conjugate_to_tau_random() {
  std::mt19937_64 rng(8);
  for (int n : {3, 5}) {
    Engine eng;
    TreeAut t = tau(eng, n);
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<TreeAut> children;
      bool trivial = true;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) images[static_cast<std::size_t>(j)] = j;
        std::shuffle(images.begin(), images.end(), rng);
        Perm p = Perm::from_images(images);
        if (!(p == Perm(n))) trivial = false;
        children.push_back(eng.rigid(p));
      }
      if (trivial) children[0] = eng.rigid(Perm::rotation(n));
      TreeAut g = eng.wreath(children, Perm(n));
      TreeAut beta = eng.conjugate(t, g);
      ConjugationResult result = conjugate_to_tau(eng, beta, 6);
      if (!result.report.certified || result.report.certified_depth < 6) return false;
      if (!eng.equal_to_depth(eng.conjugate(beta, result.conjugator), t, 6)) return false;
    }
  }
  return true;
}

bool criterion_centralizer_family() {
  Engine eng;
  TreeAut t2 = eng.power_int(tau(eng, 4), 2);
  std::set<Perm> dihedral = subgroup_closure(4, {Perm::rotation(4), Perm::from_cycles(4, {{0, 2}})});
  if (dihedral.size() != 8) return false;
  std::vector<Perm> activities(dihedral.begin(), dihedral.end());
  std::vector<TreeAut> family;
  for (int m0 = 0; m0 < 4; ++m0) {
    for (int m1 = 0; m1 < 4; ++m1) {
      for (const Perm& sg : activities) {
        TreeAut x = centralizer_tau2_element(eng, NAdic(4, m0), NAdic(4, m1), sg);
        if (!eng.commutes_to_depth(t2, x, 8)) return false;
        family.push_back(x);
      }
    }
  }
  if (family.size() != 128) return false;

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick_member(0, family.size() - 1);
  std::uniform_int_distribution<int> pick_kind(0, 3);
  std::uniform_int_distribution<int> pick_slot(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    TreeAut base = family[pick_member(rng)];
    TreeAut perturbation = eng.identity(4);
    switch (pick_kind(rng)) {
      case 0:
        perturbation = eng.rigid(Perm::from_cycles(4, {{0, 1}}));
        break;
      case 1:
        perturbation = eng.rigid(Perm::from_cycles(4, {{1, 2}}));
        break;
      case 2:
        perturbation = eng.rigid(Perm::from_cycles(4, {{0, 1, 2}}));
        break;
      default: {
        std::vector<TreeAut> children(4, eng.identity(4));
        children[static_cast<std::size_t>(pick_slot(rng))] = tau(eng, 4);
        perturbation = eng.wreath(children, Perm(4));
        break;
      }
    }
    if (eng.commutes_to_depth(t2, eng.compose(base, perturbation), 8)) return false;
  }
  return true;
}

bool criterion_conjtau2_pipeline() {
  Engine eng;
  const int n = 4;
  TreeAut t2 = eng.power_int(tau(eng, n), 2);
  const std::pair<int, int> samples[5] = {{1, 5}, {0, 1}, {0, 3}, {1, 1}, {2, 3}};
  for (auto [m0, x1] : samples) {
    NAdic d(n, 1 - 2 * m0);
    NAdic x0 = NAdic(n, 1) * d.invert();
    NAdic xx1 = NAdic(n, x1) * d.invert();
    TreeAut beta = beta_family_half_turn(eng, NAdic(n, m0), NAdic(n, x1));
    TreeAut alpha =
        eng.wreath({eng.identity(n), eng.identity(n), eng.inverse(eng.section(beta, 0)),
                    eng.inverse(eng.section(beta, 1))},
                   Perm(n));
    TreeAut th1 = eng.inverse(conjugator_to_power(eng, x0));
    TreeAut th2 = eng.inverse(conjugator_to_power(eng, xx1));
    TreeAut gamma = eng.wreath({th1, th2, th1, th2}, Perm(n));
    TreeAut landed = eng.conjugate(eng.conjugate(beta, alpha), gamma);
    if (!is_equal(eng, landed, t2, 400000)) return false;
  }
  return true;
}

bool criterion_wreath_presentation() {
  const std::array<std::array<int, 3>, 3> cases = {{{2, 4, 2}, {3, 3, 1}, {2, 6, 3}}};
  for (const auto& mns : cases) {
    Engine eng;
    SuiteReport report = verify(eng, "wreath",
                                {{"m", std::to_string(mns[0])},
                                 {"n", std::to_string(mns[1])},
                                 {"s", std::to_string(mns[2])}});
    if (!report.passed()) return false;
  }
  return true;
}

bool criterion_symmetric_facts() {
  SylowReport four = sylow_facts(4);
  if (four.sylows.size() != 3 || four.sylows_containing_rotation.size() != 1) return false;
  SylowReport five = sylow_facts(5);
  if (five.normalizer_order != 20) return false;

  const Perm sigma = Perm::rotation(4);
  std::set<Perm> dihedral = subgroup_closure(4, {sigma, Perm::from_cycles(4, {{0, 2}})});
  std::vector<Perm> everyone;
  {
    std::vector<int> images = {0, 1, 2, 3};
    do {
      everyone.push_back(Perm::from_images(images));
    } while (std::next_permutation(images.begin(), images.end()));
  }
  for (std::size_t x = 0; x < everyone.size(); ++x) {
    for (std::size_t y = x; y < everyone.size(); ++y) {
      std::set<Perm> sub = subgroup_closure(4, {everyone[x], everyone[y]});
      bool abelian = true;
      for (const Perm& p : sub) {
        for (const Perm& q : sub) {
          if (compose(p, q) != compose(q, p)) {
            abelian = false;
            break;
          }
        }
        if (!abelian) break;
      }
      if (!abelian) continue;
      bool normalized = true;
      for (const Perm& p : sub) {
        if (!sub.count(conjugate(p, sigma))) {
          normalized = false;
          break;
        }
      }
      if (!normalized) continue;
      for (const Perm& p : sub) {
        if (!dihedral.count(p)) return false;
      }
    }
  }
  return true;
}

bool criterion_transposition_suite() {
  Engine eng;
  SuiteReport report = verify(eng, "transposition");
  if (!report.passed() || report.relations.size() != 27) return false;
  for (const auto& [key, value] : report.params) {
    if (key == "beta" && value != "wreath(id, id, tau, id; (0 2))") return false;
  }
  return true;
}

bool criterion_level_transitivity() {
  for (int n : {2, 3, 4}) {
    Engine eng;
    TreeAut t = tau(eng, n);
    for (int k = 1; k <= 6; ++k) {
      const std::vector<int> start(static_cast<std::size_t>(k), 0);
      std::vector<int> current = start;
      long long size = 0;
      do {
        current = eng.apply_vertex(t, current);
        ++size;
      } while (current != start);
      long long expected = 1;
      for (int i = 0; i < k; ++i) expected *= n;
      if (size != expected) return false;
    }
  }

  // Samples from the square subgroup of the layer closure of the dihedral
  // group: products of squares of elements whose activities all lie in D.
  Engine eng;
  const int n = 4;
  std::set<Perm> closure = subgroup_closure(4, {Perm::rotation(4), Perm::from_cycles(4, {{0, 2}})});
  std::vector<Perm> dihedral(closure.begin(), closure.end());
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<std::size_t> pick(0, dihedral.size() - 1);
  auto random_layer_element = [&]() {
    std::vector<TreeAut> level1;
    for (int i = 0; i < n; ++i) {
      std::vector<TreeAut> leaves;
      for (int j = 0; j < n; ++j) leaves.push_back(eng.rigid(dihedral[pick(rng)]));
      level1.push_back(eng.wreath(leaves, dihedral[pick(rng)]));
    }
    return eng.wreath(level1, dihedral[pick(rng)]);
  };
  for (int trial = 0; trial < 5; ++trial) {
    TreeAut a = random_layer_element();
    TreeAut b = random_layer_element();
    TreeAut gamma = eng.compose(eng.power_int(a, 2), eng.power_int(b, 2));
    if (!eng.is_level_transitive(eng.compose(gamma, tau(eng, n)), 4)) return false;
  }
  return true;
}

int cli_exit(const std::string& args) {
  std::string command = std::string("\"") + TREEAUT_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  int status = std::system(command.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

bool criterion_parser_goldens() {
  std::vector<treeaut_tests::GoldenCase> cases = treeaut_tests::golden_cases();
  if (cases.size() != 30) return false;
  for (const auto& c : cases) {
    std::string canon = unparse(parse_expression(c.text));
    if (unparse(parse_expression(canon)) != canon) return false;
    Engine eng;
    TreeAut got = evaluate_text(eng, c.degree, c.text);
    if (!is_equal(eng, got, c.direct(eng))) return false;
  }
  const std::pair<std::string, int> cli_cases[] = {
      {"--n 2 eval tau", 0},
      {"--n 2 equal tau id --depth 3", 1},
      {"--n 2 equal 'conj(tau, lambda(3))' 'tau^3' --bisim --budget 1", 2},
      {"--n 4 verify nope", 64},
      {"--n 2 apply tau 121", 64},
      {"eval tau", 64},
      {"--n 2 eval 'tau^'", 65},
      {"--n 4 eval 'psi(2)'", 65},
  };
  for (const auto& [args, expected] : cli_cases) {
    if (cli_exit(args) != expected) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "diagonal power identity for n in 2..6", criterion_diagonal_power);
  criterion(2, "adding machine has two states with the documented edges", criterion_state_graph);
  criterion(3, "adic exponents match iterated composition", criterion_adic_powers);
  criterion(4, "carry identities hold exhaustively for n in 2..12", criterion_delta_suite);
  criterion(5, "conjugators move tau onto the advertised powers", criterion_conjugators);
  criterion(6, "commutator with lambda matches the exponent formula", criterion_commutator_formula);
  criterion(7, "normalizer conjugator construction and obstruction", criterion_normalizer_conjugator);
  criterion(8, "random inactive conjugates straighten back onto tau", criterion_conjugate_to_tau_random);
  criterion(9, "centralizer family commutes and perturbations fail", criterion_centralizer_family);
  criterion(10, "two-step conjugator lands exactly on tau squared", criterion_conjtau2_pipeline);
  criterion(11, "wreath presentation holds in the permutation model", criterion_wreath_presentation);
  criterion(12, "symmetric group facts at degrees four and five", criterion_symmetric_facts);
  criterion(13, "transposition suite passes on the default family member", criterion_transposition_suite);
  criterion(14, "orbits have full size and sampled squares stay transitive", criterion_level_transitivity);
  criterion(15, "golden expressions and documented exit codes", criterion_parser_goldens);

  if (failures > 0) {
    std::printf("ACCEPTANCE FAIL (%d of 15)\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE PASS (15 of 15)\n");
  return 0;
}
