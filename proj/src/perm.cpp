#include "treeaut/perm.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace treeaut {

int reduce_mod(long long value, int degree) {
  if (degree <= 0) throw std::invalid_argument("degree must be positive");
  long long r = value % degree;
  if (r < 0) r += degree;
  return static_cast<int>(r);
}

Perm::Perm(int degree) {
  if (degree < 1) throw std::invalid_argument("permutation degree must be at least 1");
  images_.resize(static_cast<std::size_t>(degree));
  std::iota(images_.begin(), images_.end(), 0);
}

Perm Perm::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  if (n < 1) throw std::invalid_argument("empty image table");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : images) {
    if (v < 0 || v >= n) throw std::invalid_argument("image out of range");
    if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("image table is not a bijection");
    seen[static_cast<std::size_t>(v)] = true;
  }
  Perm p(n);
  p.images_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p(degree);
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  for (const auto& cycle : cycles) {
    for (int point : cycle) {
      if (point < 0 || point >= degree) {
        throw std::invalid_argument("cycle point " + std::to_string(point) +
                                    " out of range for degree " + std::to_string(degree));
      }
      if (used[static_cast<std::size_t>(point)]) {
        throw std::invalid_argument("cycle point " + std::to_string(point) + " repeated");
      }
      used[static_cast<std::size_t>(point)] = true;
    }
    if (cycle.size() < 2) continue;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int from = cycle[i];
      int to = cycle[(i + 1) % cycle.size()];
      p.images_[static_cast<std::size_t>(from)] = to;
    }
  }
  return p;
}

Perm Perm::parse(const std::string& text, int degree) {
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    ++pos;
    std::vector<int> cycle;
    skip_space();
    while (pos < text.size() && text[pos] != ')') {
      bool neg = false;
      if (text[pos] == '-') {
        neg = true;
        ++pos;
      }
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw std::invalid_argument("expected point in cycle notation");
      }
      long long v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > 1000000) throw std::invalid_argument("cycle point too large");
        ++pos;
      }
      cycle.push_back(static_cast<int>(neg ? -v : v));
      skip_space();
    }
    if (pos >= text.size()) throw std::invalid_argument("unterminated cycle");
    ++pos;  // consume ')'
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_space();
  }
  return from_cycles(degree, cycles);
}

Perm Perm::rotation(int degree) {
  Perm p(degree);
  for (int i = 0; i < degree; ++i) p.images_[static_cast<std::size_t>(i)] = (i + 1) % degree;
  return p;
}

Perm Perm::reversal(int degree) {
  Perm p(degree);
  for (int i = 0; i < degree; ++i) p.images_[static_cast<std::size_t>(i)] = degree - 1 - i;
  return p;
}

int Perm::act(long long point) const {
  return images_[static_cast<std::size_t>(reduce_mod(point, degree()))];
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i) {
    if (images_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm p(degree());
  for (int i = 0; i < degree(); ++i) {
    p.images_[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
  }
  return p;
}

Perm Perm::power(long long exponent) const {
  Perm base = exponent < 0 ? inverse() : *this;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-(exponent + 1)) + 1ULL
                                      : static_cast<unsigned long long>(exponent);
  Perm result(degree());
  while (e > 0) {
    if (e & 1ULL) result = treeaut::compose(result, base);
    base = treeaut::compose(base, base);
    e >>= 1ULL;
  }
  return result;
}

std::string Perm::to_string() const {
  std::vector<bool> seen(static_cast<std::size_t>(degree()), false);
  std::ostringstream out;
  bool any = false;
  for (int start = 0; start < degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    int cur = start;
    do {
      seen[static_cast<std::size_t>(cur)] = true;
      cycle.push_back(cur);
      cur = images_[static_cast<std::size_t>(cur)];
    } while (cur != start);
    if (cycle.size() < 2) continue;
    any = true;
    out << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) out << ' ';
      out << cycle[i];
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("degree mismatch in composition");
  std::vector<int> images(static_cast<std::size_t>(p.degree()));
  for (int i = 0; i < p.degree(); ++i) {
    images[static_cast<std::size_t>(i)] = q.act(p.act(i));
  }
  return Perm::from_images(std::move(images));
}

Perm conjugate(const Perm& p, const Perm& q) {
  return compose(compose(q.inverse(), p), q);
}

std::set<Perm> subgroup_closure(int degree, const std::vector<Perm>& generators) {
  if (degree > 8) throw std::invalid_argument("subgroup closure guarded to degree <= 8");
  for (const Perm& g : generators) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
  }
  std::set<Perm> closure;
  std::queue<Perm> frontier;
  Perm id(degree);
  closure.insert(id);
  frontier.push(id);
  while (!frontier.empty()) {
    Perm current = frontier.front();
    frontier.pop();
    for (const Perm& g : generators) {
      Perm next = compose(current, g);
      if (closure.insert(next).second) frontier.push(next);
    }
  }
  return closure;
}

namespace {

// Closure under composition, abandoned as soon as it exceeds max_size.
// Returns an empty set when the bound is exceeded.
std::set<Perm> bounded_closure(int degree, const std::vector<Perm>& generators,
                               std::size_t max_size) {
  std::set<Perm> closure;
  std::queue<Perm> frontier;
  Perm id(degree);
  closure.insert(id);
  frontier.push(id);
  while (!frontier.empty()) {
    Perm current = frontier.front();
    frontier.pop();
    for (const Perm& g : generators) {
      Perm next = compose(current, g);
      if (closure.insert(next).second) {
        if (closure.size() > max_size) return {};
        frontier.push(next);
      }
    }
  }
  return closure;
}

// All elements of the symmetric group on `degree` letters.
std::vector<Perm> whole_symmetric_group(int degree) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 0);
  std::vector<Perm> all;
  do {
    all.push_back(Perm::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return all;
}

bool is_prime_power(int n, int& prime_out, int& exponent_out) {
  for (int p = 2; p <= n; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        prime = false;
        break;
      }
    }
    if (!prime) continue;
    int m = n;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (m == 1 && e >= 1) {
      prime_out = p;
      exponent_out = e;
      return true;
    }
    if (e > 0) return false;
  }
  return false;
}

std::size_t prime_power_part_of_factorial(int n, int p) {
  // p-adic valuation of n!, then p to that power.
  int exponent = 0;
  for (long long q = p; q <= n; q *= p) exponent += n / static_cast<int>(q);
  std::size_t order = 1;
  for (int i = 0; i < exponent; ++i) order *= static_cast<std::size_t>(p);
  return order;
}

bool has_p_power_order(const Perm& g, int p) {
  // The order of a permutation is a p-power iff every cycle length is.
  std::vector<bool> seen(static_cast<std::size_t>(g.degree()), false);
  for (int start = 0; start < g.degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    int len = 0;
    int cur = start;
    do {
      seen[static_cast<std::size_t>(cur)] = true;
      cur = g.act(cur);
      ++len;
    } while (cur != start);
    while (len % p == 0) len /= p;
    if (len != 1) return false;
  }
  return true;
}

std::set<Perm> conjugate_subgroup(const std::set<Perm>& subgroup, const Perm& by) {
  std::set<Perm> image;
  for (const Perm& g : subgroup) image.insert(conjugate(g, by));
  return image;
}

}  // namespace

SylowReport sylow_facts(int degree) {
  if (degree < 2 || degree > 8) throw std::invalid_argument("sylow_facts guarded to 2 <= degree <= 8");
  SylowReport report;
  report.degree = degree;
  int prime = 0;
  int exponent = 0;
  if (!is_prime_power(degree, prime, exponent)) {
    throw std::invalid_argument("sylow_facts requires a prime power degree");
  }
  report.prime = prime;
  report.sylow_order = prime_power_part_of_factorial(degree, prime);

  const Perm sigma = Perm::rotation(degree);
  const std::vector<Perm> everyone = whole_symmetric_group(degree);

  // Grow one Sylow subgroup from the rotation by absorbing p-elements that
  // keep the closure a p-group of order at most the Sylow order.
  std::vector<Perm> generators = {sigma};
  std::set<Perm> current = subgroup_closure(degree, generators);
  while (current.size() < report.sylow_order) {
    bool grew = false;
    for (const Perm& g : everyone) {
      if (!has_p_power_order(g, prime) || current.count(g)) continue;
      std::vector<Perm> extended = generators;
      extended.push_back(g);
      std::set<Perm> closure = bounded_closure(degree, extended, report.sylow_order);
      if (!closure.empty() && closure.size() > current.size() &&
          std::all_of(closure.begin(), closure.end(),
                      [&](const Perm& h) { return has_p_power_order(h, prime); })) {
        generators = std::move(extended);
        current = std::move(closure);
        grew = true;
        break;
      }
    }
    if (!grew) throw std::logic_error("failed to grow a Sylow subgroup");
  }

  // All Sylow p-subgroups are conjugate; collect the orbit.
  std::set<std::set<Perm>> sylow_set;
  for (const Perm& g : everyone) sylow_set.insert(conjugate_subgroup(current, g));
  std::size_t distinguished = 0;
  for (const auto& subgroup : sylow_set) {
    std::size_t index = report.sylows.size();
    report.sylows.push_back(subgroup);
    if (subgroup.count(sigma)) {
      report.sylows_containing_rotation.push_back(index);
      distinguished = index;
    }
  }
  report.unique_sylow_contains_rotation = report.sylows_containing_rotation.size() == 1;

  const std::set<Perm>& chosen = report.sylows[distinguished];
  for (const Perm& g : everyone) {
    if (conjugate_subgroup(chosen, g) == chosen) report.normalizer.insert(g);
  }
  report.normalizer_order = report.normalizer.size();
  return report;
}

}  // namespace treeaut
