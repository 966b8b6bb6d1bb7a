#ifndef TREEAUT_ENGINE_HPP
#define TREEAUT_ENGINE_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "treeaut/nadic.hpp"
#include "treeaut/perm.hpp"

namespace treeaut {

class Engine;

using NodeId = std::int32_t;

// Handle to an automorphism of the rooted n-ary tree, owned by an Engine.
// Handles are cheap value types; equal handles denote identical nodes.
struct TreeAut {
  Engine* engine = nullptr;
  NodeId id = -1;

  bool valid() const { return engine != nullptr && id >= 0; }
  bool operator==(const TreeAut& other) const {
    return engine == other.engine && id == other.id;
  }
  bool operator!=(const TreeAut& other) const { return !(*this == other); }
};

// Outcome of a bounded bisimulation check.
struct BisimResult {
  enum class Kind { Equal, NotEqual, Unknown };
  Kind kind = Kind::Unknown;
  // For NotEqual: the shortest, lexicographically least vertex witnessing
  // the disagreement.
  std::vector<int> witness;
  std::size_t pairs_explored = 0;
};

// The finite-state structure of an automorphism. States are the distinct
// reachable sections; an edge (from, input, output, to) says the state reads
// the letter `input`, writes `output`, and proceeds to state `to`.
struct StateGraph {
  bool complete = false;
  std::size_t states_explored = 0;
  std::vector<NodeId> states;  // BFS discovery order; states[0] is the root
  struct Edge {
    std::size_t from = 0;
    int input = 0;
    int output = 0;
    std::size_t to = 0;
  };
  std::vector<Edge> edges;
};

// Formats a vertex as a digit string for degree <= 10, otherwise as
// comma-separated letters. The root (empty vertex) prints as "".
std::string vertex_to_string(const std::vector<int>& vertex, int degree);

// Inverse of vertex_to_string. Throws std::invalid_argument on bad letters.
std::vector<int> parse_vertex(const std::string& text, int degree);

// Specifies one child slot of an equation-system definition: either a
// concrete node, or a reference to a system variable, optionally composed
// on the right with a fixed node.
struct ChildSpec {
  int variable = -1;
  TreeAut node;
  TreeAut postfactor;

  static ChildSpec concrete(TreeAut value) {
    ChildSpec spec;
    spec.node = value;
    return spec;
  }
  static ChildSpec var(int index) {
    ChildSpec spec;
    spec.variable = index;
    return spec;
  }
  static ChildSpec var_times(int index, TreeAut factor) {
    ChildSpec spec;
    spec.variable = index;
    spec.postfactor = factor;
    return spec;
  }
};

// The lazy wreath-recursion engine. Nodes are hash-consed: structurally
// equal constructions always return the same node id, so equal parameters
// give equal keys. A single Engine instance is not thread-safe; use one
// engine per thread.
class Engine {
 public:
  Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  // A rigid automorphism: permutes level one by `activity` and extends by
  // fixing the rest of each subtree.
  TreeAut rigid(const Perm& activity);

  TreeAut identity(int degree);

  // The automorphism with the given first-level sections and root activity.
  TreeAut wreath(const std::vector<TreeAut>& children, const Perm& activity);

  // Applies a first, then b.
  TreeAut compose(TreeAut a, TreeAut b);

  TreeAut inverse(TreeAut a);

  // b^{-1} a b.
  TreeAut conjugate(TreeAut a, TreeAut b);

  // a^{-1} b^{-1} a b.
  TreeAut commutator(TreeAut a, TreeAut b);

  // Integer power; the exponent may be negative.
  TreeAut power_int(TreeAut a, long long exponent);

  // The adding machine raised to an exact n-adic exponent. The recursion
  // closes over the finitely many shifted exponents, so the result is a
  // finite-state automorphism whenever the exponent is rational.
  TreeAut tau_pow_adic(const NAdic& exponent);

  // A self-referential element x = wreath(children(x), activity), where the
  // body may mention x itself. The key identifies the defining system:
  // calls with the same key return the same node without re-materializing.
  TreeAut recursive_element(const std::string& key, const Perm& activity,
                            std::function<TreeAut(TreeAut self)> body);

  int degree(TreeAut a) const;

  const Perm& activity(TreeAut a) const;

  // First-level section at the given letter.
  TreeAut section(TreeAut a, int letter);

  // Section at a vertex (a word of letters; the empty word returns a).
  TreeAut section_at(TreeAut a, const std::vector<int>& vertex);

  // Image of a vertex under the automorphism.
  std::vector<int> apply_vertex(TreeAut a, const std::vector<int>& vertex);

  // True when a and b agree on every vertex of length at most `depth`.
  bool equal_to_depth(TreeAut a, TreeAut b, int depth);

  // Exact equality by bisimulation closure. Explores section pairs
  // breadth-first; returns Unknown when more than `budget` distinct pairs
  // would be needed.
  BisimResult equal_bisim(TreeAut a, TreeAut b, std::size_t budget = 10000);

  bool commutes_to_depth(TreeAut a, TreeAut b, int depth);

  // True when the automorphism acts transitively on the vertices of the
  // given level. Guarded to n^level <= 4096.
  bool is_level_transitive(TreeAut a, int level);

  // Reachable section closure with a state budget.
  StateGraph state_graph(TreeAut a, std::size_t budget = 10000);

  // Depth-bounded portrait: portrait(a, 0) = "•"; deeper portraits list the
  // child portraits followed by the root activity in cycle notation. With
  // `names`, non-root nodes print their registered name when they have one.
  std::string portrait(TreeAut a, int depth, bool names = false);

  // Registers a display name for a node. The first registration wins.
  void register_name(TreeAut a, const std::string& name);

  std::optional<std::string> name_of(TreeAut a) const;

  // The exact exponent when the node is a known power of the adding machine.
  std::optional<NAdic> tau_exponent_of(TreeAut a) const;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  friend class SystemBuilder;

  enum class NodeKind : std::uint8_t { Rigid, Wreath, SelfRef, Inverse, Word };

  struct Node {
    NodeKind kind = NodeKind::Rigid;
    int degree = 0;
    Perm activity{1};
    std::vector<NodeId> parts;  // Wreath children, Word letters, Inverse target
    int system = -1;            // SelfRef
    int variable = -1;          // SelfRef
  };

  struct EqSystem {
    int degree = 0;
    std::vector<Perm> activities;
    std::vector<NodeId> bodies;  // -1 until materialized
    std::function<NodeId(int variable)> materialize;
  };

  const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  NodeId intern(Node node, const std::string& key);

  NodeId mk_rigid(const Perm& activity);
  NodeId mk_wreath(int degree, const std::vector<NodeId>& children, const Perm& activity);
  NodeId mk_selfref(int system, int variable);
  NodeId mk_inverse_atom(NodeId target);
  NodeId mk_word(int degree, const std::vector<NodeId>& letters);

  NodeId inverse_id(NodeId a);
  NodeId compose_ids(NodeId a, NodeId b);
  std::vector<NodeId> letters_of(NodeId a) const;
  void push_letter(std::vector<NodeId>& stack, NodeId letter);
  std::optional<NAdic> letter_exponent(NodeId a) const;

  // Index of the system registered under `key`, creating it if needed.
  int intern_system(const std::string& key, int degree, std::vector<Perm> activities,
                    bool& existed);

  NodeId resolve(NodeId selfref);
  NodeId section_id(NodeId a, int letter);
  bool equal_to_depth_ids(NodeId a, NodeId b, int depth);

  TreeAut handle(NodeId id) { return TreeAut{this, id}; }
  NodeId check(TreeAut a) const;

  std::deque<Node> nodes_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::deque<EqSystem> systems_;
  std::unordered_map<std::string, int> system_index_;
  std::unordered_map<std::uint64_t, NodeId> section_memo_;
  std::unordered_set<std::uint64_t> sections_in_progress_;
  std::unordered_map<std::uint64_t, bool> depth_memo_;
  std::unordered_map<NodeId, std::string> names_;
  std::map<NodeId, NAdic> tau_exponents_;
};

// Builds a finite system of mutually recursive wreath definitions. Variables
// may appear only in children slots (the recursion is guarded); referencing
// a variable with no definition is an error at build() time.
class SystemBuilder {
 public:
  SystemBuilder(Engine& engine, int degree, int variable_count);

  void define(int variable, const std::vector<ChildSpec>& children, const Perm& activity);

  // Materializes the system and returns one handle per variable.
  std::vector<TreeAut> build();

 private:
  Engine& engine_;
  int degree_;
  struct Definition {
    bool defined = false;
    std::vector<ChildSpec> children;
    Perm activity{1};
  };
  std::vector<Definition> definitions_;
  bool built_ = false;
};

// Renders a state graph in DOT format. States are numbered in BFS order
// from the root; the root is drawn with a double circle; edges are labelled
// "input|output". Registered names are appended to state labels.
std::string to_dot(Engine& engine, const StateGraph& graph);

}  // namespace treeaut

#endif  // TREEAUT_ENGINE_HPP
