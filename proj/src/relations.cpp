#include "treeaut/relations.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <gmpxx.h>

#include "treeaut/elements.hpp"
#include "treeaut/exprlang.hpp"
#include "treeaut/nadic.hpp"
#include "treeaut/perm.hpp"

namespace treeaut {

namespace {

std::string sanitize(std::string text) {
  for (char& ch : text) {
    if (ch == ' ' || ch == '\n' || ch == '\t') ch = '_';
  }
  return text;
}

// Reads suite parameters with defaults and rejects unknown keys, so a typo
// in --param fails loudly instead of silently checking the default.
class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  bool has(const std::string& key) {
    seen_.insert(key);
    return raw_.count(key) > 0;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    seen_.insert(key);
    auto it = raw_.find(key);
    return it == raw_.end() ? fallback : it->second;
  }

  long long get_int(const std::string& key, long long fallback) {
    seen_.insert(key);
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    try {
      std::size_t used = 0;
      long long v = std::stoll(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("param " + key + ": expected an integer, got '" +
                                  it->second + "'");
    }
  }

  // "a..b" ranges for exponent windows, e.g. xs=-4..4.
  std::pair<long long, long long> get_range(const std::string& key, long long lo,
                                            long long hi) {
    seen_.insert(key);
    auto it = raw_.find(key);
    if (it == raw_.end()) return {lo, hi};
    const std::string& text = it->second;
    auto dots = text.find("..");
    try {
      if (dots == std::string::npos) {
        long long bound = std::stoll(text);
        if (bound < 0) bound = -bound;
        return {-bound, bound};
      }
      long long a = std::stoll(text.substr(0, dots));
      long long b = std::stoll(text.substr(dots + 2));
      if (a > b || b - a > 64) throw std::invalid_argument("bad range");
      return {a, b};
    } catch (const std::exception&) {
      throw std::invalid_argument("param " + key + ": expected a range like -4..4, got '" +
                                  text + "'");
    }
  }

  void reject_unknown(const std::string& suite) const {
    for (const auto& [key, value] : raw_) {
      (void)value;
      if (!seen_.count(key)) {
        throw std::invalid_argument("unknown param '" + key + "' for suite " + suite);
      }
    }
  }

 private:
  const std::map<std::string, std::string>& raw_;
  std::set<std::string> seen_;
};

struct Ctx {
  explicit Ctx(Engine& engine) : eng(engine) {}

  Engine& eng;
  int n = 0;
  int depth = 6;
  std::uint64_t seed = 0;
  std::mt19937_64 rng;
  std::vector<RelationResult> results;

  TreeAut adder;  // the degree-n adding machine, set by suites that use it

  TreeAut tpow(long long k) { return eng.power_int(adder, k); }

  TreeAut word(std::initializer_list<TreeAut> factors) {
    TreeAut acc = eng.identity(n);
    for (const TreeAut& f : factors) acc = eng.compose(acc, f);
    return acc;
  }

  // First vertex (BFS order) where the images under a and b disagree.
  std::string diff_vertex(TreeAut a, TreeAut b) {
    std::vector<std::vector<int>> frontier(1);
    for (int level = 0; level < depth; ++level) {
      std::vector<std::vector<int>> next;
      for (const auto& v : frontier) {
        for (int letter = 0; letter < n; ++letter) {
          auto w = v;
          w.push_back(letter);
          if (eng.apply_vertex(a, w) != eng.apply_vertex(b, w)) {
            return vertex_to_string(w, n);
          }
          next.push_back(std::move(w));
        }
      }
      frontier = std::move(next);
      if (frontier.size() > 20000) break;
    }
    return "?";
  }

  // nullopt when a = b to the context depth; otherwise a witness string
  // carrying the loop inputs and the first disagreeing vertex.
  std::optional<std::string> neq(TreeAut a, TreeAut b, const std::string& inputs) {
    if (eng.equal_to_depth(a, b, depth)) return std::nullopt;
    std::string w = inputs;
    if (!w.empty()) w += ",";
    w += "vertex=" + diff_vertex(a, b);
    return w;
  }

  std::optional<std::string> not_identity(TreeAut a, const std::string& inputs) {
    return neq(a, eng.identity(n), inputs);
  }

  template <typename Body>
  void relation(const std::string& id, Body body) {
    RelationResult r;
    r.id = id;
    try {
      std::optional<std::string> witness = body();
      r.passed = !witness.has_value();
      if (witness) r.witness = sanitize(*witness);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.witness = sanitize(std::string("error:") + ex.what());
    }
    results.push_back(std::move(r));
  }
};

std::string kv(const std::string& key, long long value) {
  return key + "=" + std::to_string(value);
}

constexpr std::array<std::pair<long long, long long>, 3> exponent_pairs{
    {{1, 1}, {1, -1}, {2, 1}}};

TreeAut section_mod(Ctx& c, TreeAut a, long long index) {
  return c.eng.section(a, reduce_mod(index, c.n));
}

// Parses a witness element given as an expression; parse and evaluation
// failures surface as parameter errors.
TreeAut eval_beta(Ctx& c, const std::string& text) {
  try {
    return evaluate_text(c.eng, c.n, text);
  } catch (const std::exception& ex) {
    throw std::invalid_argument(std::string("param beta: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// delta: arithmetic identities of the carry functions, no tree elements.

void suite_delta(Ctx& c) {
  const int n = c.n;

  std::vector<NAdic> adics;
  {
    mpq_class u = mpq_class(1) / mpq_class(n + 1);
    adics.emplace_back(n, u);
    adics.emplace_back(n, mpq_class(-u));
    adics.emplace_back(n, mpq_class(n - 1) + u);
  }
  std::vector<NAdic> mixed;
  for (long long v = -static_cast<long long>(n); v <= 2 * n; ++v) mixed.emplace_back(n, v);
  for (const NAdic& q : adics) mixed.push_back(q);

  c.relation("delta2-range", [&]() -> std::optional<std::string> {
    for (const NAdic& a : mixed) {
      for (const NAdic& b : mixed) {
        int d = delta2(a, b);
        if (d != 0 && d != 1) {
          return "eta=" + a.to_string() + ",kappa=" + b.to_string();
        }
      }
    }
    return std::nullopt;
  });

  c.relation("delta2-cocycle", [&]() -> std::optional<std::string> {
    for (const NAdic& a : mixed) {
      for (long long b = -2; b <= n; ++b) {
        for (long long cc = -2; cc <= n; ++cc) {
          NAdic nb(n, b), nc(n, cc);
          int lhs = delta2(a, nb) + delta2(a + nb, nc);
          int rhs = delta2(nb, nc) + delta2(a, nb + nc);
          if (lhs != rhs) {
            return "a=" + a.to_string() + "," + kv("b", b) + "," + kv("c", cc);
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("delta2-sum", [&]() -> std::optional<std::string> {
    for (const NAdic& kappa : mixed) {
      int total = 0;
      for (int i = 0; i < n; ++i) total += delta2(NAdic(n, i), kappa);
      if (total != kappa.residue()) return "kappa=" + kappa.to_string();
    }
    return std::nullopt;
  });

  // Carry of i against j*xi, unrolled along the j-fold sum of xi.
  c.relation("delta2-iterate", [&]() -> std::optional<std::string> {
    std::vector<NAdic> xis;
    for (long long v = 1; v <= n + 1; ++v) xis.emplace_back(n, v);
    xis.emplace_back(n, -1);
    for (const NAdic& q : adics) xis.push_back(q);
    for (const NAdic& xi : xis) {
      for (long j = 0; j <= n + 2; ++j) {
        for (int i = 0; i < n; ++i) {
          NAdic jxi(n, mpq_class(j) * xi.value());
          mpq_class lhs = delta2(NAdic(n, i), jxi);
          mpq_class rhs = mpq_class(j) * (xi.value() - xi.residue()) / n -
                          (jxi.value() - jxi.residue()) / n;
          for (long k = 0; k < j; ++k) {
            rhs += delta2(NAdic(n, mpq_class(i) + mpq_class(k) * xi.value()), xi);
          }
          if (lhs != rhs) {
            return "xi=" + xi.to_string() + "," + kv("j", j) + "," + kv("i", i);
          }
        }
      }
    }
    return std::nullopt;
  });

  auto d3 = [n](long long s, long long i, long long t) { return delta3(n, s, i, t); };

  c.relation("delta3-closed-form", [&]() -> std::optional<std::string> {
    for (int s = 1; s < n; ++s) {
      for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) {
          int value = d3(s, i, t);
          int expected = delta2(n, i, -s) - delta2(n, t, -s);
          int table = 0;
          if (t < s && s <= i) table = 1;
          if (i < s && s <= t) table = -1;
          if (value != expected || value != table || value < -1 || value > 1) {
            return kv("s", s) + "," + kv("i", i) + "," + kv("t", t);
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("delta3-lift", [&]() -> std::optional<std::string> {
    for (int s = 1; s < n; ++s) {
      for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) {
          for (long long a = -1; a <= 1; ++a) {
            for (long long b = -1; b <= 1; ++b) {
              if (d3(s, i + a * n, t + b * n) != d3(s, i, t)) {
                return kv("s", s) + "," + kv("i", i) + "," + kv("t", t) + "," +
                       kv("a", a) + "," + kv("b", b);
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("delta3-antisymmetry", [&]() -> std::optional<std::string> {
    for (int s = 1; s < n; ++s) {
      for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) {
          if (d3(s, i, t) != -d3(s, t, i)) {
            return kv("s", s) + "," + kv("i", i) + "," + kv("t", t);
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("delta3-shift", [&]() -> std::optional<std::string> {
    for (int s = 1; s < n; ++s) {
      for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) {
          if (d3(s, i + s, t + s) != -d3(-s, i, t)) {
            return kv("s", s) + "," + kv("i", i) + "," + kv("t", t);
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("delta3-chain", [&]() -> std::optional<std::string> {
    for (int s = 1; s < n; ++s) {
      for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) {
          for (int z = 0; z < n; ++z) {
            if (d3(s, i, t) != d3(s, i, z) + d3(s, z, t)) {
              return kv("s", s) + "," + kv("i", i) + "," + kv("t", t) + "," + kv("z", z);
            }
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("delta3-orbit-sum", [&]() -> std::optional<std::string> {
    for (int s = 1; s < n; ++s) {
      int terms = n / std::gcd(s, n);
      for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) {
          int total = 0;
          for (int k = 0; k < terms; ++k) {
            total += d3(s, i + static_cast<long long>(k) * s, t + static_cast<long long>(k) * s);
          }
          if (total != 0) return kv("s", s) + "," + kv("i", i) + "," + kv("t", t);
        }
      }
    }
    return std::nullopt;
  });

  c.relation("delta3-row-sum", [&]() -> std::optional<std::string> {
    for (int s = 1; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        int total = 0;
        for (int k = 0; k < n; ++k) total += d3(s, k, t);
        int expected = (t < s) ? n - s : -s;
        if (total != expected) return kv("s", s) + "," + kv("t", t);
      }
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// powers: exact adic powers of the adding machine.

// An odometer built as a plain recursive wreath definition, kept apart from the
// exponent-indexed family so that words in its letter are never folded by the
// engine. Comparing against it keeps the power checks a real bisimulation.
TreeAut reference_odometer(Engine& eng, int n) {
  return eng.recursive_element(
      "reference-odometer:" + std::to_string(n), Perm::rotation(n), [&eng, n](TreeAut self) {
        std::vector<TreeAut> children(static_cast<std::size_t>(n - 1), eng.identity(n));
        children.push_back(self);
        return eng.wreath(children, Perm::rotation(n));
      });
}

void suite_powers(Ctx& c, std::size_t budget) {
  const int n = c.n;
  TreeAut t = c.adder;
  TreeAut indep = reference_odometer(c.eng, n);

  std::vector<NAdic> xis;
  for (long long v = -2 * n; v <= 2 * n; ++v) xis.emplace_back(n, v);
  xis.push_back(NAdic::ratio(n, 1, n + 1));
  xis.push_back(NAdic::ratio(n, -1, n + 1));
  xis.push_back(NAdic::ratio(n, 2 * n + 1, n + 1));

  c.relation("adic-int-match", [&]() -> std::optional<std::string> {
    for (long long m = -8; m <= 8; ++m) {
      BisimResult r = c.eng.equal_bisim(c.eng.tau_pow_adic(NAdic(n, m)),
                                        c.eng.power_int(indep, m), budget);
      if (r.kind != BisimResult::Kind::Equal) return kv("m", m);
    }
    return std::nullopt;
  });

  c.relation("adic-multiply", [&]() -> std::optional<std::string> {
    std::vector<std::pair<NAdic, long>> cases;
    cases.emplace_back(NAdic::ratio(n, 1, n + 1), n + 1);
    cases.emplace_back(NAdic::ratio(n, -1, n + 1), n + 1);
    cases.emplace_back(NAdic(n, 2), 3);
    cases.emplace_back(NAdic(n, -3), 2);
    if (n % 3 != 0) cases.emplace_back(NAdic::ratio(n, 1, 3), 3);
    for (const auto& [xi, m] : cases) {
      TreeAut lhs = c.eng.power_int(c.eng.tau_pow_adic(xi), m);
      TreeAut rhs = c.eng.tau_pow_adic(NAdic(n, xi.value() * m));
      BisimResult r = c.eng.equal_bisim(lhs, rhs, budget);
      if (r.kind != BisimResult::Kind::Equal) {
        return "xi=" + xi.to_string() + "," + kv("m", m);
      }
    }
    return std::nullopt;
  });

  c.relation("diagonal-power", [&]() -> std::optional<std::string> {
    std::vector<TreeAut> diag(static_cast<std::size_t>(n), t);
    BisimResult r = c.eng.equal_bisim(c.eng.power_int(t, n),
                                      c.eng.wreath(diag, Perm(n)), budget);
    if (r.kind != BisimResult::Kind::Equal) return "power=n";
    return std::nullopt;
  });

  c.relation("inverse-form", [&]() -> std::optional<std::string> {
    std::vector<TreeAut> children(static_cast<std::size_t>(n), c.eng.identity(n));
    children[0] = c.eng.inverse(t);
    TreeAut rhs = c.eng.wreath(children, Perm::rotation(n).inverse());
    BisimResult r = c.eng.equal_bisim(c.eng.inverse(t), rhs, budget);
    if (r.kind != BisimResult::Kind::Equal) return "inverse";
    return std::nullopt;
  });

  // Section formula: the power by xi decomposes as the carry-adjusted
  // shifted powers over residue-rotated slots.
  c.relation("section-formula", [&]() -> std::optional<std::string> {
    for (const NAdic& xi : xis) {
      int r0 = xi.residue();
      std::vector<TreeAut> children;
      children.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        mpq_class shifted = (xi.value() - r0) / n + delta2(NAdic(n, i), xi);
        children.push_back(c.eng.tau_pow_adic(NAdic(n, shifted)));
      }
      TreeAut rhs = c.eng.wreath(children, Perm::rotation(n).power(r0));
      if (auto w = c.neq(c.eng.tau_pow_adic(xi), rhs, "xi=" + xi.to_string())) return w;
    }
    return std::nullopt;
  });

  // Minimality: the reachable-state count equals the orbit size of the
  // exponent under the digit shift with carries.
  c.relation("state-count", [&]() -> std::optional<std::string> {
    for (const NAdic& xi : xis) {
      std::set<mpq_class> orbit;
      std::vector<mpq_class> todo{xi.value()};
      while (!todo.empty()) {
        mpq_class x = todo.back();
        todo.pop_back();
        if (!orbit.insert(x).second) continue;
        NAdic a(n, x);
        mpq_class base = (x - a.residue()) / n;
        todo.push_back(base);
        if (a.residue() != 0) todo.push_back(base + 1);
      }
      StateGraph g = c.eng.state_graph(c.eng.tau_pow_adic(xi), budget);
      if (!g.complete || g.states.size() != orbit.size()) {
        return "xi=" + xi.to_string() + ",states=" + std::to_string(g.states.size()) +
               ",expected=" + std::to_string(orbit.size());
      }
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// normalizer: conjugators moving the adding machine to its powers.

void suite_normalizer(Ctx& c) {
  const int n = c.n;
  TreeAut t = c.adder;

  std::vector<NAdic> one_units;
  one_units.emplace_back(n, 1 + n);
  one_units.emplace_back(n, 1 + 2 * n);
  one_units.emplace_back(n, static_cast<long long>(1 + n) * (1 + n));
  one_units.push_back(NAdic::ratio(n, 1, 1 + n));

  c.relation("lambda-conjugates", [&]() -> std::optional<std::string> {
    for (const NAdic& xi : one_units) {
      TreeAut lhs = c.eng.conjugate(t, lambda(c.eng, xi));
      if (auto w = c.neq(lhs, c.eng.tau_pow_adic(xi), "xi=" + xi.to_string())) return w;
    }
    return std::nullopt;
  });

  c.relation("lambda-product", [&]() -> std::optional<std::string> {
    for (const NAdic& xi : one_units) {
      for (const NAdic& th : one_units) {
        TreeAut lhs = c.eng.compose(lambda(c.eng, xi), lambda(c.eng, th));
        TreeAut rhs = lambda(c.eng, xi * th);
        if (auto w = c.neq(lhs, rhs, "xi=" + xi.to_string() + ",theta=" + th.to_string())) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("lambda-commutator", [&]() -> std::optional<std::string> {
    std::vector<NAdic> etas;
    etas.emplace_back(n, 1);
    etas.emplace_back(n, -1);
    etas.emplace_back(n, 2);
    etas.emplace_back(n, n);
    etas.push_back(NAdic::ratio(n, 1, n + 1));
    for (const NAdic& eta : etas) {
      for (int j = 0; j < 2; ++j) {
        const NAdic& th = one_units[static_cast<std::size_t>(j)];
        TreeAut lhs = c.eng.commutator(c.eng.tau_pow_adic(eta), lambda(c.eng, th));
        TreeAut rhs = c.eng.tau_pow_adic(NAdic(n, eta.value() * (th.value() - 1)));
        if (auto w = c.neq(lhs, rhs, "eta=" + eta.to_string() + ",theta=" + th.to_string())) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("iota-inverts", [&]() -> std::optional<std::string> {
    BisimResult r = c.eng.equal_bisim(c.eng.conjugate(t, iota(c.eng, n)),
                                      c.eng.inverse(t), 200000);
    if (r.kind != BisimResult::Kind::Equal) return "iota";
    return std::nullopt;
  });

  c.relation("unit-conjugator", [&]() -> std::optional<std::string> {
    std::vector<NAdic> units;
    units.emplace_back(n, 1 + n);
    if (n > 2) units.emplace_back(n, n - 1);
    units.push_back(NAdic::ratio(n, 1, 1 + n));
    for (const NAdic& xi : units) {
      TreeAut alpha = conjugator_to_power(c.eng, xi);
      if (auto w = c.neq(c.eng.conjugate(t, alpha), c.eng.tau_pow_adic(xi),
                         "xi=" + xi.to_string())) {
        return w;
      }
    }
    return std::nullopt;
  });

  c.relation("conjugator-recursion", [&]() -> std::optional<std::string> {
    std::vector<std::pair<NAdic, NAdic>> cases;
    if (n % 2 == 1) {
      cases.emplace_back(NAdic(n, 1 + n), NAdic(n, 1));
      cases.emplace_back(NAdic(n, 1 + 2 * n), NAdic(n, 1 + n));
    } else {
      cases.emplace_back(NAdic(n, 1 + 2 * n), NAdic(n, 1));
    }
    for (const auto& [xi, rho] : cases) {
      TreeAut alpha = build_normalizer_conjugator(c.eng, n, xi, rho);
      if (!c.eng.activity(alpha).is_identity()) return "xi=" + xi.to_string() + ",active";
      TreeAut rhs = c.eng.compose(lambda(c.eng, xi), c.eng.tau_pow_adic(rho));
      if (auto w = c.neq(c.eng.conjugate(t, alpha), rhs,
                         "xi=" + xi.to_string() + ",rho=" + rho.to_string())) {
        return w;
      }
    }
    return std::nullopt;
  });

  c.relation("conjugator-domain", [&]() -> std::optional<std::string> {
    try {
      build_normalizer_conjugator(c.eng, n, NAdic(n, 1), NAdic(n, 1));
      return "xi=1 accepted";
    } catch (const std::domain_error&) {
    }
    if (n % 2 == 0) {
      try {
        build_normalizer_conjugator(c.eng, n, NAdic(n, 1 + n), NAdic(n, 1));
        return "xi=" + std::to_string(1 + n) + " accepted";
      } catch (const std::domain_error&) {
      }
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// commutation: identities satisfied by a witness commuting with its
// adder-conjugates, plus the transported variants when the activity is a
// rotation power.

void suite_commutation(Ctx& c, TreeAut beta, long long xs_lo, long long xs_hi) {
  const int n = c.n;

  std::vector<long long> xs_full;
  for (long long x = xs_lo; x <= xs_hi; ++x) xs_full.push_back(x);
  std::vector<long long> xs_small;
  for (long long x : xs_full) {
    if (x >= -2 && x <= 2) xs_small.push_back(x);
  }
  if (xs_small.empty()) xs_small.push_back(xs_lo);

  auto b = [&](long long i) { return section_mod(c, beta, i); };
  const Perm& sb = c.eng.activity(beta);

  c.relation("hypothesis", [&]() -> std::optional<std::string> {
    for (long long x : xs_full) {
      TreeAut conj = c.eng.conjugate(beta, c.tpow(x));
      if (auto w = c.not_identity(c.eng.commutator(beta, conj), kv("x", x))) return w;
    }
    return std::nullopt;
  });

  // Commutator against a product exponent, split through the partial
  // exponent: an unconditional rewriting identity.
  c.relation("basico", [&]() -> std::optional<std::string> {
    for (long long k1 : xs_small) {
      for (long long k2 : xs_small) {
        TreeAut lhs = c.eng.conjugate(c.eng.commutator(beta, c.tpow(k1)), c.tpow(k2));
        TreeAut rhs = c.eng.compose(
            c.eng.inverse(c.eng.commutator(beta, c.tpow(k2))),
            c.eng.commutator(beta, c.tpow(k1 + k2)));
        if (auto w = c.neq(lhs, rhs, kv("k1", k1) + "," + kv("k2", k2))) return w;
      }
    }
    return std::nullopt;
  });

  // Per exponent, commuting with the conjugate is equivalent to the double
  // commutator vanishing; both directions are checked as a biconditional.
  c.relation("lemma5-equivalence", [&]() -> std::optional<std::string> {
    for (long long k : xs_full) {
      bool left = c.eng.equal_to_depth(
          c.eng.commutator(beta, c.eng.conjugate(beta, c.tpow(k))), c.eng.identity(n),
          c.depth);
      TreeAut inner = c.eng.commutator(c.tpow(k), beta);
      bool right = c.eng.equal_to_depth(c.eng.commutator(inner, beta), c.eng.identity(n),
                                        c.depth);
      if (left != right) return kv("k", k);
    }
    return std::nullopt;
  });

  c.relation("lemma5-commutators", [&]() -> std::optional<std::string> {
    for (long long k1 : xs_small) {
      for (long long k2 : xs_small) {
        TreeAut g1 = c.eng.commutator(beta, c.tpow(k1));
        TreeAut g2 = c.eng.commutator(beta, c.tpow(k2));
        if (auto w = c.not_identity(c.eng.commutator(g1, g2),
                                    kv("k1", k1) + "," + kv("k2", k2))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("lemma5-sections", [&]() -> std::optional<std::string> {
    for (int u = 0; u < n; ++u) {
      for (long long k1 : xs_small) {
        for (long long k2 : xs_small) {
          TreeAut g1 = c.eng.commutator(b(u), c.tpow(k1));
          TreeAut g2 = c.eng.commutator(b(u), c.tpow(k2));
          if (auto w = c.not_identity(c.eng.commutator(g1, g2),
                                      kv("u", u) + "," + kv("k1", k1) + "," + kv("k2", k2))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  // A level-stabilizing power of the witness has sections that commute with
  // the adder-conjugates of each other's sections.
  c.relation("stabilizer-sections", [&]() -> std::optional<std::string> {
    long long q = 1;
    Perm p = sb;
    while (!p.is_identity()) {
      p = compose(p, sb);
      ++q;
    }
    TreeAut alpha = c.eng.power_int(beta, q);
    if (!c.eng.activity(alpha).is_identity()) return "power-not-stabilizing";
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        for (long long x : xs_small) {
          TreeAut conj = c.eng.conjugate(c.eng.section(alpha, v), c.tpow(x));
          if (auto w = c.not_identity(c.eng.commutator(c.eng.section(alpha, u), conj),
                                      kv("u", u) + "," + kv("v", v) + "," + kv("x", x))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  const Perm sigma = Perm::rotation(n);

  c.relation("abp1-components", [&]() -> std::optional<std::string> {
    for (long long v = 1; v <= 2; ++v) {
      Perm sv = sigma.power(v);
      if (compose(conjugate(sb, sv), sb) != compose(sb, conjugate(sb, sv))) {
        return kv("v", v) + ",activities";
      }
      TreeAut tv = c.tpow(v);
      auto tsec = [&](long long i) { return section_mod(c, tv, i); };
      for (int i = 0; i < n; ++i) {
        long long a = sv.inverse().act(i);
        long long a2 = sb.act(a);
        long long a3 = sv.act(a2);
        TreeAut lhs = c.word({c.eng.inverse(tsec(a)), b(a), tsec(a2), b(a3)});
        long long d = sv.inverse().act(sb.act(i));
        long long d2 = sb.act(d);
        TreeAut rhs = c.word({b(i), c.eng.inverse(tsec(d)), b(d), tsec(d2)});
        if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("v", v))) return w;
      }
    }
    return std::nullopt;
  });

  c.relation("abp1-exchange", [&]() -> std::optional<std::string> {
    for (long long v = 1; v <= 2; ++v) {
      for (int i = 0; i < n; ++i) {
        int j = sb.act(i);
        TreeAut lhs = c.eng.conjugate(c.eng.commutator(b(i), c.tpow(v)), b(j));
        TreeAut rhs = c.eng.commutator(b(j), c.tpow(v));
        if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("v", v))) return w;
      }
    }
    return std::nullopt;
  });

  c.relation("abp1-orbit", [&]() -> std::optional<std::string> {
    for (long long v = 1; v <= 2; ++v) {
      for (int i = 0; i < n; ++i) {
        int orbit = 1;
        int j = sb.act(i);
        TreeAut prod = b(j);
        while (j != i) {
          j = sb.act(j);
          prod = c.eng.compose(prod, b(j));
          ++orbit;
        }
        TreeAut comm = c.eng.commutator(b(i), c.tpow(v));
        if (auto w = c.not_identity(c.eng.commutator(prod, comm),
                                    kv("i", i) + "," + kv("v", v))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  // Transported identities, defined when the activity is a rotation power.
  int s = -1;
  for (int k = 0; k < n; ++k) {
    if (sb == sigma.power(k)) {
      s = k;
      break;
    }
  }

  if (s > 0) {
    const int ss = s;
    auto d3 = [&](long long i, long long tt) { return delta3(n, ss, i, tt); };

    c.relation("section-transport", [&]() -> std::optional<std::string> {
      for (int i = 0; i < n; ++i) {
        for (int tt = 0; tt < n; ++tt) {
          for (long long z : xs_small) {
            TreeAut lhs = c.word({c.tpow(d3(i, tt)), b(i - ss),
                                  c.eng.commutator(b(i - ss), c.tpow(z)), b(tt)});
            TreeAut rhs = c.word({b(tt - ss), b(i), c.eng.commutator(b(i), c.tpow(z)),
                                  c.tpow(d3(i + ss, tt + ss))});
            if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("t", tt) + "," + kv("z", z))) {
              return w;
            }
          }
        }
      }
      return std::nullopt;
    });

    c.relation("transport-product", [&]() -> std::optional<std::string> {
      for (int i = 0; i < n; ++i) {
        for (int tt = 0; tt < n; ++tt) {
          TreeAut lhs = c.word({c.tpow(d3(i, tt)), b(i - ss), b(tt)});
          TreeAut rhs = c.word({b(tt - ss), b(i), c.tpow(d3(i + ss, tt + ss))});
          if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("t", tt))) return w;
        }
      }
      return std::nullopt;
    });

    c.relation("transport-conjugation", [&]() -> std::optional<std::string> {
      for (int i = 0; i < n; ++i) {
        for (int tt = 0; tt < n; ++tt) {
          for (long long z : xs_small) {
            TreeAut by = c.eng.compose(b(tt), c.tpow(-d3(i + ss, tt + ss)));
            TreeAut lhs = c.eng.conjugate(c.eng.commutator(b(i - ss), c.tpow(z)), by);
            TreeAut rhs = c.eng.commutator(b(i), c.tpow(z));
            if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("t", tt) + "," + kv("z", z))) {
              return w;
            }
          }
        }
      }
      return std::nullopt;
    });

    c.relation("transport-commute", [&]() -> std::optional<std::string> {
      for (int i = 0; i < n; ++i) {
        for (int tt = 0; tt < n; ++tt) {
          for (long long z : {1LL, 2LL}) {
            for (long long x : {1LL, -1LL}) {
              TreeAut g1 = c.eng.commutator(b(i), c.tpow(z));
              TreeAut g2 = c.eng.commutator(b(tt), c.tpow(x));
              if (auto w = c.not_identity(c.eng.commutator(g1, g2),
                                          kv("i", i) + "," + kv("t", tt) + "," + kv("z", z) +
                                              "," + kv("x", x))) {
                return w;
              }
            }
          }
        }
      }
      return std::nullopt;
    });

    // Activity congruence, when every section activity is a rotation power.
    std::vector<int> m(static_cast<std::size_t>(n), -1);
    bool readable = true;
    for (int j = 0; j < n && readable; ++j) {
      const Perm& sj = c.eng.activity(b(j));
      readable = false;
      for (int k = 0; k < n; ++k) {
        if (sj == sigma.power(k)) {
          m[static_cast<std::size_t>(j)] = k;
          readable = true;
          break;
        }
      }
    }
    if (readable) {
      c.relation("activity-congruence", [&]() -> std::optional<std::string> {
        for (int i = 0; i < n; ++i) {
          for (int tt = 0; tt < n; ++tt) {
            long long lhs = d3(i, tt) + m[static_cast<std::size_t>(reduce_mod(i - ss, n))] +
                            m[static_cast<std::size_t>(tt)];
            long long rhs = m[static_cast<std::size_t>(reduce_mod(tt - ss, n))] +
                            m[static_cast<std::size_t>(i)] + d3(i + ss, tt + ss);
            if (reduce_mod(lhs - rhs, n) != 0) return kv("i", i) + "," + kv("t", tt);
          }
        }
        return std::nullopt;
      });
    }

    if (ss == 1 && (n == 2 || n % 2 == 1)) {
      c.relation("deep-activity", [&]() -> std::optional<std::string> {
        TreeAut deep = c.eng.section(c.eng.power_int(beta, n), 0);
        if (c.eng.activity(deep) != sigma) return "power-section";
        TreeAut prod = c.eng.identity(n);
        for (int j = 0; j < n; ++j) prod = c.eng.compose(prod, b(j));
        if (c.eng.activity(prod) != sigma) return "section-product";
        return std::nullopt;
      });
    }
  }
}

// ---------------------------------------------------------------------------
// theorem-b: the deep-section generators of the witness power commute, are
// centralized by the section commutators, and shift along the activity.

void suite_theorem_b(Ctx& c, TreeAut beta, long long zs_lo, long long zs_hi) {
  const int n = c.n;
  const Perm sigma = Perm::rotation(n);
  const Perm& sb = c.eng.activity(beta);

  int s = -1;
  for (int k = 1; k < n; ++k) {
    if (sb == sigma.power(k)) {
      s = k;
      break;
    }
  }
  if (s < 1) {
    throw std::invalid_argument(
        "suite theorem-b needs a witness whose activity is a nontrivial rotation power");
  }
  const int m = n / std::gcd(n, s);

  auto b = [&](long long i) { return section_mod(c, beta, i); };
  TreeAut power = c.eng.power_int(beta, m);
  auto pi = [&](long long j) { return section_mod(c, power, j); };

  std::vector<long long> zs;
  for (long long z = zs_lo; z <= zs_hi; ++z) zs.push_back(z);

  c.relation("hypothesis", [&]() -> std::optional<std::string> {
    for (long long x = -3; x <= 3; ++x) {
      TreeAut conj = c.eng.conjugate(beta, c.tpow(x));
      if (auto w = c.not_identity(c.eng.commutator(beta, conj), kv("x", x))) return w;
    }
    return std::nullopt;
  });

  c.relation("pi-commute", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (auto w = c.not_identity(c.eng.commutator(pi(i), pi(j)),
                                    kv("i", i) + "," + kv("j", j))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("pi-centralizes-commutators", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (long long z : zs) {
          TreeAut g = c.eng.commutator(b(i), c.tpow(z));
          if (auto w = c.not_identity(c.eng.commutator(g, pi(j)),
                                      kv("i", i) + "," + kv("j", j) + "," + kv("z", z))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("pi-shift", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        int e = delta3(n, -s, j, i);
        TreeAut lhs = c.eng.conjugate(pi(i + s), c.tpow(e));
        TreeAut rhs = c.eng.conjugate(pi(i), b(j));
        if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("j", j))) return w;
      }
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// even-half: witness activity is the half rotation; its sections satisfy the
// swap and closure identities of the finite-quotient presentation.

void suite_even_half(Ctx& c, TreeAut beta) {
  const int n = c.n;
  const int h = n / 2;

  auto b = [&](long long i) { return section_mod(c, beta, i); };
  auto d = [&](long long j, long long i) { return delta3(n, h, j, i); };
  auto g1 = [&](long long tt, long long k) { return c.eng.commutator(b(tt), c.tpow(k)); };
  auto g2 = [&](long long i) { return c.eng.compose(b(i), b(i + h)); };
  auto g3 = [&](long long j) {
    return c.word({b(j), b(j), c.tpow(-d(j, j + h))});
  };

  std::vector<long long> ks{-2, -1, 1, 2};

  c.relation("activity", [&]() -> std::optional<std::string> {
    if (c.eng.activity(beta) != Perm::rotation(n).power(h)) return "activity";
    return std::nullopt;
  });

  c.relation("hypothesis", [&]() -> std::optional<std::string> {
    for (long long x = -3; x <= 3; ++x) {
      TreeAut conj = c.eng.conjugate(beta, c.tpow(x));
      if (auto w = c.not_identity(c.eng.commutator(beta, conj), kv("x", x))) return w;
    }
    return std::nullopt;
  });

  c.relation("n-abelian", [&]() -> std::optional<std::string> {
    for (int t1 = 0; t1 < n; ++t1) {
      for (int t2 = 0; t2 < n; ++t2) {
        for (auto [k1, k2] : exponent_pairs) {
          if (auto w = c.not_identity(c.eng.commutator(g1(t1, k1), g1(t2, k2)),
                                      kv("t1", t1) + "," + kv("t2", t2) + "," + kv("k1", k1) +
                                          "," + kv("k2", k2))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("pair-swap", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        TreeAut lhs = c.eng.compose(b(i), b(j));
        TreeAut rhs = c.word({c.tpow(d(j, i + h)), b(j + h), b(i + h), c.tpow(d(i, j + h))});
        if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("j", j))) return w;
      }
    }
    return std::nullopt;
  });

  c.relation("g2-conjugation", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        TreeAut lhs = c.eng.conjugate(g2(i), b(j));
        TreeAut rhs = c.eng.conjugate(c.eng.compose(b(i + h), b(i)), c.tpow(d(j, i)));
        if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("j", j))) return w;
      }
    }
    return std::nullopt;
  });

  c.relation("g3-conjugation", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        TreeAut lhs = c.eng.conjugate(g3(j), b(i));
        TreeAut inner = c.word({b(j + h), b(j + h), c.tpow(-d(j + h, j)),
                                c.eng.commutator(c.tpow(-d(j + h, j)), b(j + h))});
        TreeAut rhs = c.eng.conjugate(inner, c.tpow(d(i, j)));
        if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("j", j))) return w;
      }
    }
    return std::nullopt;
  });

  c.relation("conjugation-swap", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (long long k : ks) {
          for (long long tt : {-1LL, 1LL, 2LL}) {
            TreeAut lhs = c.eng.conjugate(g1(i, k), c.eng.compose(b(j), c.tpow(tt)));
            TreeAut rhs = c.eng.conjugate(g1(i, k), c.eng.compose(c.tpow(tt), b(j)));
            if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("j", j) + "," + kv("k", k) +
                                             "," + kv("t", tt))) {
              return w;
            }
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("g2-centralizes", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (long long k : ks) {
          if (auto w = c.neq(c.eng.conjugate(g1(i, k), g2(j)), g1(i, k),
                             kv("i", i) + "," + kv("j", j) + "," + kv("k", k))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("g3-centralizes", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (long long k : ks) {
          if (auto w = c.neq(c.eng.conjugate(g1(i, k), g3(j)), g1(i, k),
                             kv("i", i) + "," + kv("j", j) + "," + kv("k", k))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("commutator-closure", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (long long k : ks) {
          TreeAut lhs = c.eng.conjugate(g1(i + h, k), b(j));
          TreeAut rhs = c.eng.conjugate(g1(i, k), c.tpow(d(j, i)));
          if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("j", j) + "," + kv("k", k))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("g2-tau-closure", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (long long k : ks) {
        TreeAut lhs = c.eng.conjugate(g2(i), c.tpow(k));
        TreeAut rhs = c.word({g2(i), c.eng.conjugate(g1(i, k), b(i + h)), g1(i + h, k)});
        if (auto w = c.neq(lhs, rhs, kv("i", i) + "," + kv("k", k))) return w;
      }
    }
    return std::nullopt;
  });

  c.relation("g2-fixed-by-g2", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (auto w = c.neq(c.eng.conjugate(g2(i), g2(j)), g2(i),
                           kv("i", i) + "," + kv("j", j))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("g2-fixed-by-g3", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (auto w = c.neq(c.eng.conjugate(g2(i), g3(j)), g2(i),
                           kv("i", i) + "," + kv("j", j))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("g3-fixed-by-g3", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (auto w = c.neq(c.eng.conjugate(g3(i), g3(j)), g3(i),
                           kv("i", i) + "," + kv("j", j))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// transposition: witness activity is the transposition (0 h); its sections
// obey the two-apex swap and conjugation family plus the closure identities
// of the deeper generators.

void suite_transposition(Ctx& c, TreeAut beta) {
  const int n = c.n;
  const int h = n / 2;
  TreeAut t = c.adder;
  TreeAut tinv = c.eng.inverse(t);

  auto b = [&](long long i) { return section_mod(c, beta, i); };
  auto comm = [&](long long i, long long k) { return c.eng.commutator(b(i), c.tpow(k)); };

  std::vector<long long> ks{-2, -1, 1, 2};
  std::vector<int> outer;
  for (int r = 1; r < n; ++r) {
    if (r != h) outer.push_back(r);
  }

  c.relation("activity", [&]() -> std::optional<std::string> {
    if (c.eng.activity(beta) != Perm::from_cycles(n, {{0, h}})) return "activity";
    return std::nullopt;
  });

  c.relation("hypothesis", [&]() -> std::optional<std::string> {
    for (long long x = -3; x <= 3; ++x) {
      TreeAut conj = c.eng.conjugate(beta, c.tpow(x));
      if (auto w = c.not_identity(c.eng.commutator(beta, conj), kv("x", x))) return w;
    }
    return std::nullopt;
  });

  c.relation("comm-x-by-y", [&]() -> std::optional<std::string> {
    for (long long k : ks) {
      if (auto w = c.neq(c.eng.conjugate(comm(0, k), b(h)), comm(h, k), kv("k", k))) return w;
    }
    return std::nullopt;
  });

  c.relation("xy-tau-braid", [&]() -> std::optional<std::string> {
    return c.neq(c.word({b(0), t, b(0)}), c.word({b(h), tinv, b(h)}), "");
  });

  c.relation("comm-x-by-tau-x", [&]() -> std::optional<std::string> {
    for (long long k : ks) {
      TreeAut by = c.eng.compose(t, b(0));
      if (auto w = c.neq(c.eng.conjugate(comm(0, k), by), comm(h, k), kv("k", k))) return w;
    }
    return std::nullopt;
  });

  c.relation("x-outer-swap", [&]() -> std::optional<std::string> {
    for (int r : outer) {
      int e = delta2(n, h, r);
      TreeAut lhs = c.word({c.tpow(e), b(0), b(h + r)});
      TreeAut rhs = c.word({b(r), c.tpow(e), b(0)});
      if (auto w = c.neq(lhs, rhs, kv("r", r))) return w;
    }
    return std::nullopt;
  });

  c.relation("comm-x-by-outer", [&]() -> std::optional<std::string> {
    for (int r : outer) {
      for (long long k : ks) {
        if (auto w = c.neq(c.eng.conjugate(comm(0, k), b(r)), comm(0, k),
                           kv("r", r) + "," + kv("k", k))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("comm-y-by-x", [&]() -> std::optional<std::string> {
    for (long long k : ks) {
      if (auto w = c.neq(c.eng.conjugate(comm(h, k), b(0)), comm(0, k), kv("k", k))) return w;
    }
    return std::nullopt;
  });

  c.relation("xy-squares", [&]() -> std::optional<std::string> {
    return c.neq(c.word({tinv, b(h), b(h)}), c.word({b(0), b(0), t}), "");
  });

  c.relation("comm-y-by-y-tau", [&]() -> std::optional<std::string> {
    for (long long k : ks) {
      TreeAut by = c.eng.compose(b(h), tinv);
      if (auto w = c.neq(c.eng.conjugate(comm(h, k), by), comm(0, k), kv("k", k))) return w;
    }
    return std::nullopt;
  });

  c.relation("y-outer-swap", [&]() -> std::optional<std::string> {
    for (int r : outer) {
      int e = delta2(n, h, r);
      TreeAut lhs = c.word({c.tpow(-e), b(h), b(r)});
      TreeAut rhs = c.word({b(h + r), c.tpow(-e), b(h)});
      if (auto w = c.neq(lhs, rhs, kv("r", r))) return w;
    }
    return std::nullopt;
  });

  c.relation("comm-y-by-outer", [&]() -> std::optional<std::string> {
    for (int r : outer) {
      for (long long k : ks) {
        if (auto w = c.neq(c.eng.conjugate(comm(h, k), b(r)), comm(h, k),
                           kv("r", r) + "," + kv("k", k))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("outer-pair-commute", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      for (int tt : outer) {
        if (auto w = c.neq(c.eng.compose(b(j), b(tt)), c.eng.compose(b(tt), b(j)),
                           kv("j", j) + "," + kv("t", tt))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("comm-outer-by-outer", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      for (int tt : outer) {
        for (long long k : ks) {
          if (auto w = c.neq(c.eng.conjugate(comm(j, k), b(tt)), comm(j, k),
                             kv("j", j) + "," + kv("t", tt) + "," + kv("k", k))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("outer-x-shift", [&]() -> std::optional<std::string> {
    for (int tt = 1; tt < h; ++tt) {
      TreeAut lhs = c.word({tinv, b(tt + h), t, b(0)});
      TreeAut rhs = c.eng.compose(b(0), b(tt));
      if (auto w = c.neq(lhs, rhs, kv("t", tt))) return w;
    }
    return std::nullopt;
  });

  c.relation("comm-shift-by-tau-x", [&]() -> std::optional<std::string> {
    for (int tt = 1; tt < h; ++tt) {
      for (long long k : ks) {
        TreeAut by = c.eng.compose(t, b(0));
        if (auto w = c.neq(c.eng.conjugate(comm(tt + h, k), by), comm(tt, k),
                           kv("t", tt) + "," + kv("k", k))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("outer-x-swap", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      if (auto w = c.neq(c.eng.compose(b(j), b(0)), c.eng.compose(b(0), b(h + j)),
                         kv("j", j))) {
        return w;
      }
    }
    return std::nullopt;
  });

  c.relation("comm-outer-by-x", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      for (long long k : ks) {
        if (auto w = c.neq(c.eng.conjugate(comm(j, k), b(0)), comm(h + j, k),
                           kv("j", j) + "," + kv("k", k))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("outer-y-swap", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      TreeAut lhs = c.eng.compose(b(j), b(h));
      TreeAut rhs = c.word({b(h), tinv, b(j + h), t});
      if (auto w = c.neq(lhs, rhs, kv("j", j))) return w;
    }
    return std::nullopt;
  });

  c.relation("comm-outer-by-y", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      for (long long k : ks) {
        TreeAut by = c.eng.compose(b(h), tinv);
        if (auto w = c.neq(c.eng.conjugate(comm(j, k), by), comm(h + j, k),
                           kv("j", j) + "," + kv("k", k))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("y-outer-shift", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      if (auto w = c.neq(c.eng.compose(b(h), b(j)), c.eng.compose(b(h + j), b(h)),
                         kv("j", j))) {
        return w;
      }
    }
    return std::nullopt;
  });

  c.relation("comm-outer-by-y-back", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      for (long long k : ks) {
        if (auto w = c.neq(comm(j, k), c.eng.conjugate(comm(h + j, k), b(h)),
                           kv("j", j) + "," + kv("k", k))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("comm-outer-inverse", [&]() -> std::optional<std::string> {
    for (int i : {0, h}) {
      for (int j : outer) {
        for (long long k : ks) {
          TreeAut by = c.eng.inverse(b(j));
          if (auto w = c.neq(c.eng.conjugate(comm(i, k), by), comm(i, k),
                             kv("i", i) + "," + kv("j", j) + "," + kv("k", k))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("n-abelian", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (auto [k1, k2] : exponent_pairs) {
          if (auto w = c.not_identity(c.eng.commutator(comm(i, k1), comm(j, k2)),
                                      kv("i", i) + "," + kv("j", j) + "," + kv("k1", k1) +
                                          "," + kv("k2", k2))) {
            return w;
          }
        }
      }
    }
    return std::nullopt;
  });

  c.relation("u-abelian", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      for (int tt : outer) {
        for (long long a : {-1LL, 0LL, 1LL}) {
          for (long long cc : {-1LL, 0LL, 1LL}) {
            TreeAut u1 = c.eng.conjugate(b(j), c.tpow(a));
            TreeAut u2 = c.eng.conjugate(b(tt), c.tpow(cc));
            if (auto w = c.not_identity(c.eng.commutator(u1, u2),
                                        kv("j", j) + "," + kv("t", tt) + "," + kv("a", a) +
                                            "," + kv("c", cc))) {
              return w;
            }
          }
        }
      }
    }
    return std::nullopt;
  });

  // Conjugating an outer section by the apex sections lands back in the
  // outer family, possibly dressed by adder conjugates and commutators.
  c.relation("l2-closure", [&]() -> std::optional<std::string> {
    for (int j : outer) {
      struct Case {
        const char* label;
        TreeAut lhs;
        TreeAut rhs;
      };
      TreeAut cx = c.eng.commutator(b(0), t);
      TreeAut cy = c.eng.commutator(b(h), t);
      TreeAut byinv_tinv = c.eng.compose(c.eng.inverse(b(h)), tinv);
      std::vector<Case> cases{
          {"x", c.eng.conjugate(b(j), b(0)), b(j + h)},
          {"x-inv", c.eng.conjugate(b(j), c.eng.inverse(b(0))),
           c.word({tinv, b(j + h), t})},
          {"y", c.eng.conjugate(b(j), b(h)), c.word({tinv, b(j + h), t})},
          {"y-inv", c.eng.conjugate(b(j), c.eng.inverse(b(h))), b(j + h)},
          {"back-x-inv", c.eng.conjugate(b(j + h), c.eng.inverse(b(0))), b(j)},
          {"back-y", c.eng.conjugate(b(j + h), b(h)), b(j)},
          {"back-x",
           c.eng.conjugate(b(j + h), b(0)),
           c.word({c.eng.conjugate(c.eng.inverse(cx), tinv), c.eng.conjugate(b(j), tinv),
                   c.eng.conjugate(cx, tinv)})},
          {"back-y-inv",
           c.eng.conjugate(b(j + h), c.eng.inverse(b(h))),
           c.word({c.eng.conjugate(cy, byinv_tinv), c.eng.conjugate(b(j), tinv),
                   c.eng.conjugate(c.eng.inverse(cy), byinv_tinv)})},
      };
      for (const Case& cs : cases) {
        if (auto w = c.neq(cs.lhs, cs.rhs, kv("j", j) + ",case=" + cs.label)) return w;
      }
    }
    return std::nullopt;
  });

  // The two apex combinations centralize the outer generators and each other.
  c.relation("l3-centralizer", [&]() -> std::optional<std::string> {
    TreeAut c1 = c.eng.compose(b(h), b(0));
    TreeAut c2 = c.word({t, b(0), b(0)});
    if (auto w = c.not_identity(c.eng.commutator(c1, c2), "pair")) return w;
    for (int j : outer) {
      for (long long a : {-1LL, 0LL, 1LL}) {
        TreeAut u = c.eng.conjugate(b(j), c.tpow(a));
        if (auto w = c.not_identity(c.eng.commutator(c1, u),
                                    std::string("gen=c1,") + kv("j", j) + "," + kv("a", a))) {
          return w;
        }
        if (auto w = c.not_identity(c.eng.commutator(c2, u),
                                    std::string("gen=c2,") + kv("j", j) + "," + kv("a", a))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// n4: quartic-tree specific families around the square of the adder.

void suite_n4(Ctx& c) {
  const int n = 4;
  TreeAut t = c.adder;
  TreeAut t2 = c.eng.power_int(t, 2);
  const Perm sigma = Perm::rotation(4);
  const Perm half_turn = sigma.power(2);

  c.relation("psi-conjugates", [&]() -> std::optional<std::string> {
    std::vector<NAdic> etas{NAdic(n, 3), NAdic(n, -1), NAdic::ratio(n, 1, 3)};
    for (const NAdic& eta : etas) {
      TreeAut lhs = c.eng.conjugate(t, psi4(c.eng, eta));
      if (auto w = c.neq(lhs, c.eng.tau_pow_adic(eta), "eta=" + eta.to_string())) return w;
    }
    return std::nullopt;
  });

  c.relation("theta-inverts", [&]() -> std::optional<std::string> {
    BisimResult r = c.eng.equal_bisim(c.eng.conjugate(t, theta4(c.eng)),
                                      c.eng.inverse(t), 200000);
    if (r.kind != BisimResult::Kind::Equal) return "theta";
    return std::nullopt;
  });

  std::vector<Perm> centralizing;
  for (const Perm& p : subgroup_closure(4, {sigma, Perm::from_cycles(4, {{0, 2}})})) {
    centralizing.push_back(p);
  }

  c.relation("centralizer-commutes", [&]() -> std::optional<std::string> {
    if (centralizing.size() != 8) return "activity-count";
    int count = 0;
    for (int m0 = 0; m0 < 4; ++m0) {
      for (int m1 = 0; m1 < 4; ++m1) {
        for (const Perm& sg : centralizing) {
          TreeAut g = centralizer_tau2_element(c.eng, NAdic(n, m0), NAdic(n, m1), sg);
          ++count;
          if (auto w = c.not_identity(c.eng.commutator(g, t2),
                                      kv("m0", m0) + "," + kv("m1", m1) + ",sg=" +
                                          sg.to_string())) {
            return w;
          }
        }
      }
    }
    if (count != 128) return "family-count";
    return std::nullopt;
  });

  c.relation("centralizer-perturbed", [&]() -> std::optional<std::string> {
    for (int trial = 0; trial < 20; ++trial) {
      int m0 = static_cast<int>(c.rng() % 4);
      int m1 = static_cast<int>(c.rng() % 4);
      const Perm& sg = centralizing[c.rng() % centralizing.size()];
      TreeAut base = centralizer_tau2_element(c.eng, NAdic(n, m0), NAdic(n, m1), sg);
      TreeAut off = c.eng.identity(n);
      if (c.rng() % 2 == 0) {
        std::vector<TreeAut> children(4, c.eng.identity(n));
        children[c.rng() % 4] = t;
        off = c.eng.wreath(children, Perm(4));
      } else {
        off = c.eng.rigid(Perm::from_cycles(4, {{0, 1}}));
      }
      TreeAut perturbed = c.eng.compose(base, off);
      if (c.eng.equal_to_depth(c.eng.commutator(perturbed, t2), c.eng.identity(n),
                               c.depth)) {
        return kv("trial", trial) + ",still-commutes";
      }
    }
    return std::nullopt;
  });

  // Two inactive conjugators carry the half-turn family to the adder square:
  // the first straightens the sections to exact powers, the second fixes the
  // exponents slotwise.
  std::vector<std::pair<int, int>> samples{{1, 5}, {0, 1}, {0, 3}, {1, 1}, {2, 3}};

  c.relation("conjtau2-step1", [&]() -> std::optional<std::string> {
    for (auto [m0, x1] : samples) {
      NAdic d = NAdic(n, 1 - 2 * m0);
      TreeAut beta = beta_family_half_turn(c.eng, NAdic(n, m0), NAdic(n, x1));
      TreeAut alpha = c.eng.wreath(
          {c.eng.identity(n), c.eng.identity(n), c.eng.inverse(c.eng.section(beta, 0)),
           c.eng.inverse(c.eng.section(beta, 1))},
          Perm(4));
      NAdic x0 = NAdic(n, 1) * d.invert();
      NAdic xx1 = NAdic(n, x1) * d.invert();
      TreeAut target = c.eng.wreath({c.eng.identity(n), c.eng.identity(n),
                                     c.eng.tau_pow_adic(x0), c.eng.tau_pow_adic(xx1)},
                                    half_turn);
      BisimResult r = c.eng.equal_bisim(c.eng.conjugate(beta, alpha), target, 400000);
      if (r.kind != BisimResult::Kind::Equal) {
        return kv("m0", m0) + "," + kv("xi1", x1) + ",step1";
      }
    }
    return std::nullopt;
  });

  c.relation("conjtau2-lands", [&]() -> std::optional<std::string> {
    for (auto [m0, x1] : samples) {
      NAdic d = NAdic(n, 1 - 2 * m0);
      NAdic x0 = NAdic(n, 1) * d.invert();
      NAdic xx1 = NAdic(n, x1) * d.invert();
      TreeAut beta = beta_family_half_turn(c.eng, NAdic(n, m0), NAdic(n, x1));
      TreeAut alpha = c.eng.wreath(
          {c.eng.identity(n), c.eng.identity(n), c.eng.inverse(c.eng.section(beta, 0)),
           c.eng.inverse(c.eng.section(beta, 1))},
          Perm(4));
      TreeAut th1 = c.eng.inverse(conjugator_to_power(c.eng, x0));
      TreeAut th2 = c.eng.inverse(conjugator_to_power(c.eng, xx1));
      TreeAut gamma = c.eng.wreath({th1, th2, th1, th2}, Perm(4));
      TreeAut conj = c.eng.conjugate(c.eng.conjugate(beta, alpha), gamma);
      BisimResult r = c.eng.equal_bisim(conj, t2, 400000);
      if (r.kind != BisimResult::Kind::Equal) {
        return kv("m0", m0) + "," + kv("xi1", x1) + ",lands";
      }
    }
    return std::nullopt;
  });

  c.relation("hdot-normalizer", [&]() -> std::optional<std::string> {
    for (int m0 = 0; m0 < 4; ++m0) {
      for (int m1 = 0; m1 < 4; ++m1) {
        TreeAut hd = normalizer_hdot_element(c.eng, NAdic(n, m0), NAdic(n, m1));
        TreeAut target = c.eng.wreath({c.tpow(m0), c.tpow(m1), c.tpow(m0 + 1), c.tpow(m1 + 1)},
                                      half_turn);
        if (auto w = c.neq(c.eng.conjugate(t2, hd), target, kv("m0", m0) + "," + kv("m1", m1))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("family-transposition", [&]() -> std::optional<std::string> {
    std::vector<std::pair<int, int>> fams{{0, 0}, {1, 1}, {0, 2}, {2, 1}};
    for (auto [m, t1] : fams) {
      TreeAut beta = beta_family_transposition(c.eng, NAdic(n, m), NAdic(n, t1));
      if (c.eng.activity(beta) != Perm::from_cycles(4, {{0, 2}})) {
        return kv("m", m) + "," + kv("t1", t1) + ",activity";
      }
      for (long long x = -2; x <= 2; ++x) {
        TreeAut conj = c.eng.conjugate(beta, c.tpow(x));
        if (auto w = c.not_identity(c.eng.commutator(beta, conj),
                                    kv("m", m) + "," + kv("t1", t1) + "," + kv("x", x))) {
          return w;
        }
      }
    }
    return std::nullopt;
  });

  c.relation("family-half-turn", [&]() -> std::optional<std::string> {
    std::vector<std::pair<int, int>> fams{{1, 5}, {0, 3}, {2, 1}};
    for (auto [m0, x1] : fams) {
      NAdic d = NAdic(n, 1 - 2 * m0);
      TreeAut beta = beta_family_half_turn(c.eng, NAdic(n, m0), NAdic(n, x1));
      if (c.eng.activity(beta) != half_turn) {
        return kv("m0", m0) + "," + kv("xi1", x1) + ",activity";
      }
      for (long long x = -2; x <= 2; ++x) {
        TreeAut conj = c.eng.conjugate(beta, c.tpow(x));
        if (auto w = c.not_identity(c.eng.commutator(beta, conj),
                                    kv("m0", m0) + "," + kv("xi1", x1) + "," + kv("x", x))) {
          return w;
        }
      }
      TreeAut p02 = c.eng.compose(c.eng.section(beta, 0), c.eng.section(beta, 2));
      TreeAut p13 = c.eng.compose(c.eng.section(beta, 1), c.eng.section(beta, 3));
      if (auto w = c.neq(p02, c.eng.tau_pow_adic(NAdic(n, 1) * d.invert()),
                         kv("m0", m0) + "," + kv("xi1", x1) + ",product02")) {
        return w;
      }
      if (auto w = c.neq(p13, c.eng.tau_pow_adic(NAdic(n, x1) * d.invert()),
                         kv("m0", m0) + "," + kv("xi1", x1) + ",product13")) {
        return w;
      }
    }
    return std::nullopt;
  });

  // For candidates with double-transposition activity fixing no slot pair
  // compatible with the adder, the derived necessary identity fails, so no
  // member of that shape commutes with all its adder conjugates.
  c.relation("impossible-activity", [&]() -> std::optional<std::string> {
    Perm bad = Perm::from_cycles(4, {{0, 1}, {2, 3}});
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<TreeAut> children;
      for (int i = 0; i < 4; ++i) {
        children.push_back(c.tpow(static_cast<long long>(c.rng() % 5) - 2));
      }
      TreeAut cand = c.eng.wreath(children, bad);
      TreeAut expr = c.word({c.eng.power_int(c.eng.section(cand, 3), -2), t,
                             c.eng.power_int(c.eng.section(cand, 0), 2)});
      if (c.eng.equal_to_depth(expr, c.eng.identity(n), c.depth)) {
        return kv("trial", trial) + ",identity-satisfied";
      }
    }
    return std::nullopt;
  });

  // Squares from the dihedral-activity layer times the adder stay
  // level-transitive, matching conjugacy with the adder.
  c.relation("square-transitive", [&]() -> std::optional<std::string> {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<TreeAut> level1;
      for (int i = 0; i < 4; ++i) {
        std::vector<TreeAut> leaves;
        for (int j = 0; j < 4; ++j) {
          leaves.push_back(c.tpow(static_cast<long long>(c.rng() % 3) - 1));
        }
        level1.push_back(c.eng.wreath(leaves, centralizing[c.rng() % centralizing.size()]));
      }
      TreeAut g = c.eng.wreath(level1, centralizing[c.rng() % centralizing.size()]);
      TreeAut gamma = c.eng.compose(g, g);
      if (!c.eng.is_level_transitive(c.eng.compose(gamma, t), 4)) {
        return kv("trial", trial) + ",not-transitive";
      }
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// wreath: finite permutation model on m*n points; block shift u on block 0,
// block rotation a, and the twisted generators b_i = (a^s u^{-1})^{a^i}.

void suite_wreath(Ctx& c, int m, int s) {
  const int n = c.n;
  const int points = m * n;

  std::vector<int> u_images(static_cast<std::size_t>(points));
  for (int p = 0; p < points; ++p) u_images[static_cast<std::size_t>(p)] = p;
  for (int o = 0; o < m; ++o) u_images[static_cast<std::size_t>(o)] = (o + 1) % m;
  Perm u = Perm::from_images(u_images);

  std::vector<int> a_images(static_cast<std::size_t>(points));
  for (int blk = 0; blk < n; ++blk) {
    for (int o = 0; o < m; ++o) {
      a_images[static_cast<std::size_t>(blk * m + o)] = ((blk + 1) % n) * m + o;
    }
  }
  Perm a = Perm::from_images(a_images);

  Perm bgen = compose(a.power(s), u.inverse());
  auto bi = [&](long long i) { return conjugate(bgen, a.power(i)); };

  c.relation("u-order", [&]() -> std::optional<std::string> {
    if (!u.power(m).is_identity()) return kv("m", m);
    for (int k = 1; k < m; ++k) {
      if (u.power(k).is_identity()) return kv("k", k);
    }
    return std::nullopt;
  });

  c.relation("a-order", [&]() -> std::optional<std::string> {
    if (!a.power(n).is_identity()) return kv("n", n);
    for (int k = 1; k < n; ++k) {
      if (a.power(k).is_identity()) return kv("k", k);
    }
    return std::nullopt;
  });

  c.relation("block-shifts-commute", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Perm ui = conjugate(u, a.power(i));
        Perm uj = conjugate(u, a.power(j));
        if (compose(ui, uj) != compose(uj, ui)) return kv("i", i) + "," + kv("j", j);
      }
    }
    return std::nullopt;
  });

  c.relation("pair-swap", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (compose(bi(i), bi(j + s)) != compose(bi(j), bi(i + s))) {
          return kv("i", i) + "," + kv("j", j);
        }
      }
    }
    return std::nullopt;
  });

  c.relation("orbit-product", [&]() -> std::optional<std::string> {
    for (int i = 0; i < n; ++i) {
      Perm prod(points);
      for (int k = 0; k < m; ++k) {
        prod = compose(prod, bi(i + static_cast<long long>(k) * s));
      }
      if (!prod.is_identity()) return kv("i", i);
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// symmetric: finite facts about the symmetric group of the alphabet.

std::vector<Perm> all_perms(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
  std::vector<Perm> out;
  do {
    out.push_back(Perm::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

void suite_symmetric(Ctx& c) {
  const int n = c.n;
  const Perm sigma = Perm::rotation(n);
  SylowReport report = sylow_facts(n);

  unsigned long long factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= static_cast<unsigned long long>(k);

  c.relation("sylow-congruence", [&]() -> std::optional<std::string> {
    std::size_t count = report.sylows.size();
    if (count == 0) return "no-sylows";
    if (count % static_cast<std::size_t>(report.prime) != 1) {
      return "count=" + std::to_string(count);
    }
    if (factorial % report.sylow_order != 0 ||
        (factorial / report.sylow_order) % count != 0) {
      return "index=" + std::to_string(factorial / report.sylow_order);
    }
    for (const auto& sylow : report.sylows) {
      if (sylow.size() != report.sylow_order) return "order-mismatch";
    }
    return std::nullopt;
  });

  if (n <= 5) {
    c.relation("rotation-sylow-unique", [&]() -> std::optional<std::string> {
      if (report.sylows_containing_rotation.size() != 1 ||
          !report.unique_sylow_contains_rotation) {
        return "containing=" + std::to_string(report.sylows_containing_rotation.size());
      }
      return std::nullopt;
    });
  }

  std::vector<Perm> everyone = all_perms(n);

  c.relation("centralizer-order", [&]() -> std::optional<std::string> {
    std::size_t count = 0;
    for (const Perm& p : everyone) {
      if (compose(p, sigma) == compose(sigma, p)) ++count;
    }
    if (count != static_cast<std::size_t>(n)) return "count=" + std::to_string(count);
    return std::nullopt;
  });

  std::size_t phi = 0;
  for (int k = 1; k <= n; ++k) {
    if (std::gcd(k, n) == 1) ++phi;
  }

  c.relation("normalizer-order", [&]() -> std::optional<std::string> {
    std::set<Perm> rotation_powers;
    for (int k = 0; k < n; ++k) rotation_powers.insert(sigma.power(k));
    std::size_t count = 0;
    for (const Perm& p : everyone) {
      if (rotation_powers.count(conjugate(sigma, p))) ++count;
    }
    if (count != static_cast<std::size_t>(n) * phi) {
      return "count=" + std::to_string(count);
    }
    return std::nullopt;
  });

  if (n == 4 || n == 5) {
    c.relation("report-normalizer", [&]() -> std::optional<std::string> {
      if (report.normalizer_order != static_cast<std::size_t>(n) * phi) {
        return "order=" + std::to_string(report.normalizer_order);
      }
      return std::nullopt;
    });
  }

  if (n == 4) {
    c.relation("abelian-normalized", [&]() -> std::optional<std::string> {
      std::set<Perm> dihedral =
          subgroup_closure(4, {sigma, Perm::from_cycles(4, {{0, 2}})});
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
            if (!dihedral.count(p)) {
              return "generators=" + everyone[x].to_string() + "," + everyone[y].to_string();
            }
          }
        }
      }
      return std::nullopt;
    });
  }
}

}  // namespace

bool SuiteReport::passed() const {
  if (relations.empty()) return false;
  return std::all_of(relations.begin(), relations.end(),
                     [](const RelationResult& r) { return r.passed; });
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  for (const RelationResult& r : relations) {
    out << "RELATION " << r.id << (r.passed ? " PASS" : " FAIL");
    if (!r.passed && !r.witness.empty()) out << " witness=" << r.witness;
    out << "\n";
  }
  out << "SUITE " << suite << (passed() ? " PASS" : " FAIL") << "\n";
  return out.str();
}

std::vector<std::string> suite_names() {
  return {"commutation", "delta",  "even-half", "n4",        "normalizer",
          "powers",      "symmetric", "theorem-b", "transposition", "wreath"};
}

SuiteReport verify(Engine& engine, const std::string& suite,
                   const std::map<std::string, std::string>& params) {
  auto start = std::chrono::steady_clock::now();

  SuiteReport report;
  report.suite = suite;

  ParamReader reader(params);
  Ctx c{engine};

  auto push_param = [&report](const std::string& key, const std::string& value) {
    report.params.emplace_back(key, value);
  };

  auto common = [&](int default_n, int default_depth, int min_n = 2) {
    c.n = static_cast<int>(reader.get_int("n", default_n));
    if (c.n < min_n || c.n > 16) {
      throw std::invalid_argument("param n: out of range for suite " + suite);
    }
    c.depth = static_cast<int>(reader.get_int("depth", default_depth));
    if (c.depth < 1 || c.depth > 16) {
      throw std::invalid_argument("param depth: out of range");
    }
    c.seed = static_cast<std::uint64_t>(reader.get_int("seed", 0));
    c.rng.seed(c.seed);
    push_param("n", std::to_string(c.n));
    push_param("depth", std::to_string(c.depth));
    push_param("seed", std::to_string(c.seed));
  };

  if (suite == "delta") {
    c.n = static_cast<int>(reader.get_int("n", 4));
    if (c.n < 2 || c.n > 24) throw std::invalid_argument("param n: out of range");
    c.seed = static_cast<std::uint64_t>(reader.get_int("seed", 0));
    push_param("n", std::to_string(c.n));
    push_param("seed", std::to_string(c.seed));
    reader.reject_unknown(suite);
    suite_delta(c);
  } else if (suite == "powers") {
    common(4, 8);
    long long budget = reader.get_int("budget", 20000);
    if (budget < 100) throw std::invalid_argument("param budget: too small");
    push_param("budget", std::to_string(budget));
    reader.reject_unknown(suite);
    c.adder = tau(engine, c.n);
    suite_powers(c, static_cast<std::size_t>(budget));
  } else if (suite == "normalizer") {
    common(3, 8);
    reader.reject_unknown(suite);
    c.adder = tau(engine, c.n);
    suite_normalizer(c);
  } else if (suite == "commutation") {
    common(4, 6);
    auto [xs_lo, xs_hi] = reader.get_range("xs", -4, 4);
    std::string beta_text = reader.get_string(
        "beta", c.n == 4 ? "wreath(tau^-1, tau^-3, id, tau^-2; (0 2)(1 3))"
                         : "tau^" + std::to_string(1 + c.n));
    push_param("beta", beta_text);
    push_param("xs", std::to_string(xs_lo) + ".." + std::to_string(xs_hi));
    reader.reject_unknown(suite);
    c.adder = tau(engine, c.n);
    suite_commutation(c, eval_beta(c, beta_text), xs_lo, xs_hi);
  } else if (suite == "theorem-b") {
    common(6, 6);
    long long s = reader.get_int("s", 2);
    long long xi = reader.get_int("xi", s);
    std::string beta_text = reader.get_string("beta", "tau^" + std::to_string(xi));
    auto [zs_lo, zs_hi] = reader.get_range("zs", -4, 4);
    push_param("beta", beta_text);
    push_param("zs", std::to_string(zs_lo) + ".." + std::to_string(zs_hi));
    reader.reject_unknown(suite);
    c.adder = tau(engine, c.n);
    suite_theorem_b(c, eval_beta(c, beta_text), zs_lo, zs_hi);
  } else if (suite == "even-half") {
    common(4, 6);
    if (c.n % 2 != 0) {
      throw std::invalid_argument("suite even-half needs an even degree");
    }
    std::string beta_text = reader.get_string(
        "beta", c.n == 4 ? "wreath(tau^-1, tau^-3, id, tau^-2; (0 2)(1 3))"
                         : "tau^" + std::to_string(c.n / 2));
    push_param("beta", beta_text);
    reader.reject_unknown(suite);
    c.adder = tau(engine, c.n);
    suite_even_half(c, eval_beta(c, beta_text));
  } else if (suite == "transposition") {
    common(4, 6);
    if (c.n % 2 != 0) {
      throw std::invalid_argument("suite transposition needs an even degree");
    }
    std::string default_beta;
    {
      std::ostringstream text;
      text << "wreath(";
      for (int i = 0; i < c.n; ++i) {
        if (i > 0) text << ", ";
        text << (i == c.n / 2 ? "tau" : "id");
      }
      text << "; (0 " << c.n / 2 << "))";
      default_beta = text.str();
    }
    std::string beta_text = reader.get_string("beta", default_beta);
    push_param("beta", beta_text);
    reader.reject_unknown(suite);
    c.adder = tau(engine, c.n);
    suite_transposition(c, eval_beta(c, beta_text));
  } else if (suite == "n4") {
    common(4, 8, 4);
    if (c.n != 4) throw std::invalid_argument("suite n4 runs at degree 4 only");
    reader.reject_unknown(suite);
    c.adder = tau(engine, 4);
    suite_n4(c);
  } else if (suite == "wreath") {
    c.n = static_cast<int>(reader.get_int("n", 4));
    int m = static_cast<int>(reader.get_int("m", 2));
    int s = static_cast<int>(reader.get_int("s", 2));
    if (c.n < 1 || m < 1 || c.n * m > 64 || s < 0) {
      throw std::invalid_argument("params m,n,s: out of range");
    }
    c.seed = static_cast<std::uint64_t>(reader.get_int("seed", 0));
    push_param("m", std::to_string(m));
    push_param("n", std::to_string(c.n));
    push_param("s", std::to_string(s));
    push_param("seed", std::to_string(c.seed));
    reader.reject_unknown(suite);
    suite_wreath(c, m, s);
  } else if (suite == "symmetric") {
    c.n = static_cast<int>(reader.get_int("n", 4));
    if (c.n < 2 || c.n > 8) throw std::invalid_argument("param n: out of range");
    if (c.n == 6) {
      throw std::invalid_argument("suite symmetric needs a prime power degree, got 6");
    }
    c.seed = static_cast<std::uint64_t>(reader.get_int("seed", 0));
    push_param("n", std::to_string(c.n));
    push_param("seed", std::to_string(c.seed));
    reader.reject_unknown(suite);
    suite_symmetric(c);
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }

  report.seed = c.seed;
  report.relations = std::move(c.results);
  std::sort(report.relations.begin(), report.relations.end(),
            [](const RelationResult& a, const RelationResult& b) { return a.id < b.id; });

  auto elapsed = std::chrono::steady_clock::now() - start;
  report.duration_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return report;
}

}  // namespace treeaut
