#include "treeaut/elements.hpp"

#include <numeric>
#include <stdexcept>

namespace treeaut {

namespace {

void register_identity_name(Engine& engine, int degree) {
  engine.register_name(engine.identity(degree), "id");
}

// True when value/divisor is still an n-adic integer.
bool divisible_in_adics(const NAdic& value, long divisor) {
  mpq_class q = value.value() / divisor;
  q.canonicalize();
  mpz_class g;
  mpz_class deg(value.degree());
  mpz_gcd(g.get_mpz_t(), q.get_den().get_mpz_t(), deg.get_mpz_t());
  return g == 1;
}

NAdic adic_quotient(int degree, const mpq_class& numerator, const mpq_class& denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  mpq_class q = numerator / denominator;
  q.canonicalize();
  return NAdic(degree, q);
}

}  // namespace

TreeAut tau(Engine& engine, int degree) {
  TreeAut t = engine.tau_pow_adic(NAdic(degree, 1));
  engine.register_name(t, "tau");
  register_identity_name(engine, degree);
  return t;
}

TreeAut eps(Engine& engine, int degree) {
  TreeAut e = engine.rigid(Perm::reversal(degree));
  engine.register_name(e, "eps");
  return e;
}

TreeAut iota(Engine& engine, int degree) {
  SystemBuilder builder(engine, degree, 1);
  std::vector<ChildSpec> children(static_cast<std::size_t>(degree), ChildSpec::var(0));
  builder.define(0, children, Perm::reversal(degree));
  TreeAut result = builder.build()[0];
  engine.register_name(result, "iota");
  register_identity_name(engine, degree);
  return result;
}

TreeAut theta4(Engine& engine) {
  TreeAut tau_inverse = engine.tau_pow_adic(NAdic(4, -1));
  SystemBuilder builder(engine, 4, 1);
  builder.define(0,
                 {ChildSpec::var(0), ChildSpec::var_times(0, tau_inverse),
                  ChildSpec::var_times(0, tau_inverse), ChildSpec::var_times(0, tau_inverse)},
                 Perm::from_cycles(4, {{1, 3}}));
  TreeAut result = builder.build()[0];
  engine.register_name(result, "theta");
  register_identity_name(engine, 4);
  return result;
}

TreeAut conjugator_to_power(Engine& engine, const NAdic& xi) {
  const int n = xi.degree();
  if (!xi.is_unit()) {
    throw std::domain_error("conjugation exponent " + xi.to_string() + " is not a unit mod " +
                            std::to_string(n));
  }
  if (xi.value() == 1) return engine.identity(n);
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    images[static_cast<std::size_t>(j)] = reduce_mod(static_cast<long long>(j) * xi.residue(), n);
  }
  const Perm activity = Perm::from_images(images);
  const std::string key = "conjpow:" + std::to_string(n) + ":" + xi.to_string();
  return engine.recursive_element(key, activity, [&engine, xi, n, activity](TreeAut self) {
    std::vector<TreeAut> children;
    children.reserve(static_cast<std::size_t>(n));
    const NAdic shift = xi.shift_down();
    NAdic mu(n, 0);
    for (int i = 0; i < n; ++i) {
      children.push_back(engine.compose(self, engine.tau_pow_adic(mu)));
      mu = mu + shift + NAdic(n, delta2(NAdic(n, i) * xi, xi));
    }
    return engine.wreath(children, activity);
  });
}

TreeAut lambda(Engine& engine, const NAdic& xi) {
  if (!xi.is_one_unit()) {
    throw std::domain_error("lambda exponent " + xi.to_string() + " is not 1 mod " +
                            std::to_string(xi.degree()));
  }
  TreeAut result = conjugator_to_power(engine, xi);
  engine.register_name(result, "lambda(" + xi.to_string() + ")");
  register_identity_name(engine, xi.degree());
  return result;
}

TreeAut psi4(Engine& engine, const NAdic& eta) {
  if (eta.degree() != 4) throw std::invalid_argument("psi is defined on the 4-ary tree");
  TreeAut result;
  if (eta.residue() == 1) {
    result = lambda(engine, eta);
  } else if (eta.residue() == 3) {
    result = engine.compose(theta4(engine), lambda(engine, -eta));
  } else {
    throw std::domain_error("psi exponent " + eta.to_string() + " is 0 or 2 mod 4");
  }
  engine.register_name(result, "psi(" + eta.to_string() + ")");
  return result;
}

TreeAut build_normalizer_conjugator(Engine& engine, int degree, const NAdic& xi,
                                    const NAdic& rho) {
  if (xi.degree() != degree || rho.degree() != degree) {
    throw std::invalid_argument("exponent degree mismatch");
  }
  if (!xi.is_one_unit() || !rho.is_one_unit()) {
    throw std::domain_error("normalizer conjugator needs one-unit exponents");
  }
  if (xi.value() == 1) {
    throw std::domain_error("normalizer conjugator needs xi != 1");
  }
  if (degree % 2 == 0 && !divisible_in_adics(xi - NAdic(degree, 1), 2L * degree)) {
    throw std::domain_error("obstruction: xi - 1 must be divisible by 2n for even n");
  }
  const std::string key =
      "normconj:" + std::to_string(degree) + ":" + xi.to_string() + ":" + rho.to_string();
  return engine.recursive_element(key, Perm(degree), [&engine, degree, xi, rho](TreeAut) {
    const mpq_class xv = xi.value();
    const mpq_class rv = rho.value();
    mpq_class xi_pow_n = 1;
    for (int i = 0; i < degree; ++i) xi_pow_n *= xv;
    const NAdic next_xi(degree, xi_pow_n);
    const NAdic next_rho =
        adic_quotient(degree, rv * (xi_pow_n - 1), mpq_class(degree) * (xv - 1));
    if (!next_rho.is_one_unit()) {
      throw std::domain_error("obstruction: continuation exponent " + next_rho.to_string() +
                              " is not a one-unit");
    }
    TreeAut deeper = build_normalizer_conjugator(engine, degree, next_xi, next_rho);
    std::vector<TreeAut> children;
    children.reserve(static_cast<std::size_t>(degree));
    children.push_back(deeper);
    mpq_class xi_power = xv;  // xi^{i+1}
    for (int i = 0; i + 1 < degree; ++i) {
      const NAdic step =
          adic_quotient(degree, rv * (xi_power - 1) / (xv - 1) - (i + 1), mpq_class(degree));
      TreeAut factor =
          engine.compose(lambda(engine, NAdic(degree, xi_power)), engine.tau_pow_adic(step));
      children.push_back(engine.compose(deeper, factor));
      xi_power *= xv;
    }
    return engine.wreath(children, Perm(degree));
  });
}

TreeAut normal_form_conjugator(Engine& engine, TreeAut beta) {
  const int n = engine.degree(beta);
  if (engine.activity(beta) != Perm::rotation(n)) {
    throw std::invalid_argument("normal form needs activity exactly the rotation");
  }
  std::vector<TreeAut> children;
  children.reserve(static_cast<std::size_t>(n));
  children.push_back(engine.identity(n));
  TreeAut prefix = engine.identity(n);
  for (int i = 0; i + 1 < n; ++i) {
    prefix = engine.compose(prefix, engine.section(beta, i));
    children.push_back(engine.inverse(prefix));
  }
  return engine.wreath(children, Perm(n));
}

namespace {

// s with activity = rotation^s, or -1 when the activity is no such power.
int rotation_power_of(const Perm& activity) {
  const int n = activity.degree();
  const int s = activity.act(0);
  for (int i = 0; i < n; ++i) {
    if (activity.act(i) != (i + s) % n) return -1;
  }
  return s;
}

// The permutation mapping the cycle of `activity` through 0 onto the
// standard rotation: conjugating by it straightens the cycle.
Perm straightening_perm(const Perm& activity) {
  const int n = activity.degree();
  std::vector<int> images(static_cast<std::size_t>(n), -1);
  int point = 0;
  for (int i = 0; i < n; ++i) {
    if (images[static_cast<std::size_t>(point)] != -1) {
      throw std::domain_error("activity is not an n-cycle");
    }
    images[static_cast<std::size_t>(point)] = i;
    point = activity.act(point);
  }
  if (point != 0) throw std::domain_error("activity is not an n-cycle");
  return Perm::from_images(images);
}

TreeAut diagonal(Engine& engine, TreeAut x, int copies) {
  return engine.wreath(std::vector<TreeAut>(static_cast<std::size_t>(copies), x),
                       Perm(copies));
}

}  // namespace

ConjugationResult conjugate_to_tau(Engine& engine, TreeAut beta, int levels) {
  const int n = engine.degree(beta);
  if (levels < 1) throw std::invalid_argument("levels must be positive");
  ConjugationReport report;

  const int s = rotation_power_of(engine.activity(beta));
  if (s < 0) {
    throw std::domain_error("activity of beta is not a power of the rotation");
  }
  if (std::gcd(s, n) != 1) {
    throw std::domain_error("activity rotation power " + std::to_string(s) +
                            " is not coprime to " + std::to_string(n));
  }

  TreeAut t = tau(engine, n);
  report.screening_passed = true;
  for (int x = 0; x <= n * n; ++x) {
    report.screening_exponents.push_back(x);
    TreeAut conjugated = engine.conjugate(beta, engine.power_int(t, x));
    if (!engine.commutes_to_depth(beta, conjugated, levels)) {
      // The commuting-conjugates hypothesis guarantees convergence but is not
      // necessary for conjugacy, so its failure is recorded and the search
      // continues; the final certification decides.
      report.screening_passed = false;
      report.notes.push_back("commuting-conjugates check fails at exponent " +
                             std::to_string(x));
      break;
    }
  }

  TreeAut working = beta;
  if (s != 1) {
    int k = 1;
    while ((static_cast<long long>(s) * k) % n != 1) ++k;
    report.power_reduction = k;
    report.notes.push_back("raised to power " + std::to_string(k) +
                           " to straighten the activity");
    working = engine.power_int(beta, k);
  }

  TreeAut total = engine.identity(n);
  TreeAut deep = working;
  for (int stage = 0; stage < levels; ++stage) {
    const Perm straighten = straightening_perm(engine.activity(deep));
    TreeAut straightened = engine.conjugate(deep, engine.rigid(straighten));
    TreeAut local = engine.compose(engine.rigid(straighten),
                                   normal_form_conjugator(engine, straightened));
    TreeAut piece = local;
    for (int i = 0; i < stage; ++i) piece = diagonal(engine, piece, n);
    total = engine.compose(total, piece);
    TreeAut product = engine.identity(n);
    for (int i = 0; i < n; ++i) {
      product = engine.compose(product, engine.section(straightened, i));
    }
    deep = product;
    ++report.stages;
  }

  TreeAut conjugator = total;
  if (report.power_reduction != 1) {
    const NAdic inverse_exponent = NAdic(n, report.power_reduction).invert();
    TreeAut corrector = conjugator_to_power(engine, inverse_exponent);
    conjugator = engine.compose(conjugator, engine.inverse(corrector));
    report.exponent_adjustment =
        "composed with the inverse of the conjugator onto exponent " +
        inverse_exponent.to_string();
  }

  report.certified = engine.equal_to_depth(engine.conjugate(beta, conjugator), t, levels);
  if (report.certified) {
    report.certified_depth = levels;
  } else {
    for (int d = levels - 1; d >= 1; --d) {
      if (engine.equal_to_depth(engine.conjugate(beta, conjugator), t, d)) {
        report.certified_depth = d;
        break;
      }
    }
  }
  return ConjugationResult{conjugator, report};
}

TreeAut centralizer_tau2_element(Engine& engine, const NAdic& m0, const NAdic& m1,
                                 const Perm& sg) {
  if (m0.degree() != 4 || m1.degree() != 4 || sg.degree() != 4) {
    throw std::invalid_argument("centralizer family lives on the 4-ary tree");
  }
  const Perm half_turn = Perm::from_cycles(4, {{0, 2}, {1, 3}});
  if (conjugate(half_turn, sg) != half_turn) {
    throw std::invalid_argument("activity " + sg.to_string() +
                                " does not commute with the half turn");
  }
  const NAdic two(4, 2);
  const NAdic c0(4, delta2(NAdic(4, sg.act(0)), two));
  const NAdic c1(4, delta2(NAdic(4, sg.act(1)), two));
  return engine.wreath({engine.tau_pow_adic(m0), engine.tau_pow_adic(m1),
                        engine.tau_pow_adic(m0 + c0), engine.tau_pow_adic(m1 + c1)},
                       sg);
}

TreeAut normalizer_hdot_element(Engine& engine, const NAdic& m0, const NAdic& m1) {
  if (m0.degree() != 4 || m1.degree() != 4) {
    throw std::invalid_argument("normalizer family lives on the 4-ary tree");
  }
  const NAdic one(4, 1);
  const NAdic two(4, 2);
  TreeAut p0 = psi4(engine, two * m0 + one);
  TreeAut p1 = psi4(engine, two * m1 + one);
  return engine.wreath({p0, p1, engine.compose(p0, engine.tau_pow_adic(m0)),
                        engine.compose(p1, engine.tau_pow_adic(m1))},
                       Perm(4));
}

TreeAut beta_family_transposition(Engine& engine, const NAdic& m, const NAdic& t1) {
  if (m.degree() != 4 || t1.degree() != 4) {
    throw std::invalid_argument("the transposition family lives on the 4-ary tree");
  }
  const mpq_class d = 1 - 2 * m.value();
  TreeAut middle = engine.tau_pow_adic(adic_quotient(4, t1.value(), d));
  return engine.wreath({engine.tau_pow_adic(adic_quotient(4, m.value(), d)), middle,
                        engine.tau_pow_adic(adic_quotient(4, 1 - m.value(), d)), middle},
                       Perm::from_cycles(4, {{0, 2}}));
}

TreeAut beta_family_half_turn(Engine& engine, const NAdic& m0, const NAdic& xi1) {
  if (m0.degree() != 4 || xi1.degree() != 4) {
    throw std::invalid_argument("the half-turn family lives on the 4-ary tree");
  }
  const mpq_class d = 1 - 2 * m0.value();
  const mpq_class x = xi1.value();
  return engine.wreath(
      {engine.tau_pow_adic(adic_quotient(4, m0.value(), d)),
       engine.tau_pow_adic(adic_quotient(4, (x - 1) / 2 + m0.value(), d)),
       engine.tau_pow_adic(adic_quotient(4, 1 - m0.value(), d)),
       engine.tau_pow_adic(adic_quotient(4, (x + 1) / 2 - m0.value(), d))},
      Perm::from_cycles(4, {{0, 2}, {1, 3}}));
}

}  // namespace treeaut
