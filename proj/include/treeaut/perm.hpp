#ifndef TREEAUT_PERM_HPP
#define TREEAUT_PERM_HPP

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace treeaut {

// Reduce an integer to its representative in {0, ..., n-1}.
int reduce_mod(long long value, int degree);

// A permutation of the letters {0, ..., n-1}, acting on the right:
// act(i) is the image of i, and compose(p, q) applies p first, then q.
class Perm {
 public:
  // The identity permutation of the given degree.
  explicit Perm(int degree);

  // Builds a permutation from its image table. Throws std::invalid_argument
  // if the table is not a bijection of {0, ..., n-1}.
  static Perm from_images(std::vector<int> images);

  // Builds a permutation from a list of cycles over {0, ..., n-1}.
  // Out-of-range or repeated points are rejected with std::invalid_argument;
  // points are taken literally, never reduced.
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

  // Parses cycle notation, e.g. "(0 1 2)(3 4)" or "()" for the identity.
  // Throws std::invalid_argument on malformed text or bad points.
  static Perm parse(const std::string& text, int degree);

  // The n-cycle (0, 1, ..., n-1): the letter i maps to i+1 mod n.
  static Perm rotation(int degree);

  // The reversing involution (0, n-1)(1, n-2)...: i maps to n-1-i.
  static Perm reversal(int degree);

  int degree() const { return static_cast<int>(images_.size()); }

  // Image of a point. The argument is reduced mod the degree first, so
  // exponent arithmetic can feed raw integers through.
  int act(long long point) const;

  bool is_identity() const;

  Perm inverse() const;

  // Integer power; the exponent may be negative.
  Perm power(long long exponent) const;

  const std::vector<int>& images() const { return images_; }

  // Cycle notation with cycles sorted by least moved point, e.g.
  // "(0 1 2 3)" or "(0 2)(1 3)"; the identity prints as "()".
  std::string to_string() const;

  bool operator==(const Perm& other) const { return images_ == other.images_; }
  bool operator!=(const Perm& other) const { return images_ != other.images_; }
  bool operator<(const Perm& other) const { return images_ < other.images_; }

 private:
  std::vector<int> images_;
};

// Applies p first, then q. Throws std::invalid_argument on degree mismatch.
Perm compose(const Perm& p, const Perm& q);

// The conjugate q^{-1} p q.
Perm conjugate(const Perm& p, const Perm& q);

// Closure of the given generators under composition. Guarded to degree <= 8.
std::set<Perm> subgroup_closure(int degree, const std::vector<Perm>& generators);

// Facts about the Sylow p-subgroups of the symmetric group on n = p^k
// letters, relative to the rotation sigma = (0, 1, ..., n-1).
struct SylowReport {
  int degree = 0;
  int prime = 0;
  std::size_t sylow_order = 0;
  std::vector<std::set<Perm>> sylows;
  std::vector<std::size_t> sylows_containing_rotation;
  // Normalizer of the distinguished Sylow subgroup containing the rotation.
  std::set<Perm> normalizer;
  std::size_t normalizer_order = 0;
  bool unique_sylow_contains_rotation = false;
};

// Computes the SylowReport for degree n. Requires n = p^k <= 8 for a prime p;
// throws std::invalid_argument otherwise.
SylowReport sylow_facts(int degree);

}  // namespace treeaut

#endif  // TREEAUT_PERM_HPP
