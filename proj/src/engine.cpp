#include "treeaut/engine.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace treeaut {

namespace {

inline std::uint64_t pack_pair(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline std::uint64_t pack_triple(NodeId a, NodeId b, int depth) {
  if (a >= (1 << 26) || b >= (1 << 26) || depth >= (1 << 12)) {
    throw std::invalid_argument("comparison too large to memoize");
  }
  return (static_cast<std::uint64_t>(a) << 38) | (static_cast<std::uint64_t>(b) << 12) |
         static_cast<std::uint64_t>(depth);
}

std::string escape_dot(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string vertex_to_string(const std::vector<int>& vertex, int degree) {
  std::ostringstream out;
  for (std::size_t i = 0; i < vertex.size(); ++i) {
    if (degree > 10 && i > 0) out << ',';
    out << vertex[i];
  }
  return out.str();
}

std::vector<int> parse_vertex(const std::string& text, int degree) {
  std::vector<int> vertex;
  if (text.empty()) return vertex;
  if (degree <= 10) {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("bad vertex letter '" + std::string(1, c) + "'");
      }
      int letter = c - '0';
      if (letter >= degree) {
        throw std::invalid_argument("vertex letter " + std::to_string(letter) +
                                    " out of range for degree " + std::to_string(degree));
      }
      vertex.push_back(letter);
    }
    return vertex;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string piece = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (piece.empty()) throw std::invalid_argument("empty vertex letter");
    int letter = 0;
    try {
      std::size_t used = 0;
      letter = std::stoi(piece, &used);
      if (used != piece.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad vertex letter '" + piece + "'");
    }
    if (letter < 0 || letter >= degree) {
      throw std::invalid_argument("vertex letter " + std::to_string(letter) +
                                  " out of range for degree " + std::to_string(degree));
    }
    vertex.push_back(letter);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return vertex;
}

NodeId Engine::check(TreeAut a) const {
  if (a.engine != this || a.id < 0 || static_cast<std::size_t>(a.id) >= nodes_.size()) {
    throw std::invalid_argument("handle does not belong to this engine");
  }
  return a.id;
}

NodeId Engine::intern(Node candidate, const std::string& key) {
  auto it = node_index_.find(key);
  if (it != node_index_.end()) return it->second;
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(candidate));
  node_index_.emplace(key, id);
  return id;
}

NodeId Engine::mk_rigid(const Perm& activity) {
  std::ostringstream key;
  key << "R";
  for (int v : activity.images()) key << v << ',';
  Node n;
  n.kind = NodeKind::Rigid;
  n.degree = activity.degree();
  n.activity = activity;
  return intern(std::move(n), key.str());
}

NodeId Engine::mk_wreath(int degree, const std::vector<NodeId>& children, const Perm& activity) {
  if (activity.degree() != degree) throw std::invalid_argument("activity degree mismatch");
  if (static_cast<int>(children.size()) != degree) {
    throw std::invalid_argument("expected " + std::to_string(degree) + " children, got " +
                                std::to_string(children.size()));
  }
  bool all_trivial = true;
  for (NodeId child : children) {
    const Node& c = node(child);
    if (c.degree != degree) throw std::invalid_argument("child degree mismatch");
    if (!(c.kind == NodeKind::Rigid && c.activity.is_identity())) all_trivial = false;
  }
  if (all_trivial) return mk_rigid(activity);
  std::ostringstream key;
  key << "W";
  for (int v : activity.images()) key << v << ',';
  key << ':';
  for (NodeId child : children) key << child << ',';
  Node n;
  n.kind = NodeKind::Wreath;
  n.degree = degree;
  n.activity = activity;
  n.parts = children;
  return intern(std::move(n), key.str());
}

NodeId Engine::mk_selfref(int system, int variable) {
  const EqSystem& sys = systems_[static_cast<std::size_t>(system)];
  Node n;
  n.kind = NodeKind::SelfRef;
  n.degree = sys.degree;
  n.activity = sys.activities[static_cast<std::size_t>(variable)];
  n.system = system;
  n.variable = variable;
  return intern(std::move(n), "S" + std::to_string(system) + ":" + std::to_string(variable));
}

NodeId Engine::mk_inverse_atom(NodeId target) {
  const Node& t = node(target);
  if (t.kind == NodeKind::Rigid) return mk_rigid(t.activity.inverse());
  if (t.kind == NodeKind::Inverse) return t.parts[0];
  if (t.kind == NodeKind::Word) throw std::logic_error("inverse atom of a word");
  auto exponent = tau_exponents_.find(target);
  if (exponent != tau_exponents_.end()) return tau_pow_adic(-exponent->second).id;
  Node n;
  n.kind = NodeKind::Inverse;
  n.degree = t.degree;
  n.activity = t.activity.inverse();
  n.parts = {target};
  return intern(std::move(n), "I" + std::to_string(target));
}

NodeId Engine::mk_word(int degree, const std::vector<NodeId>& letters) {
  if (letters.empty()) return mk_rigid(Perm(degree));
  if (letters.size() == 1) return letters[0];
  Perm activity(degree);
  for (NodeId letter : letters) activity = treeaut::compose(activity, node(letter).activity);
  std::ostringstream key;
  key << "C";
  for (NodeId letter : letters) key << letter << ',';
  Node n;
  n.kind = NodeKind::Word;
  n.degree = degree;
  n.activity = activity;
  n.parts = letters;
  return intern(std::move(n), key.str());
}

std::vector<NodeId> Engine::letters_of(NodeId a) const {
  const Node& n = node(a);
  if (n.kind == NodeKind::Word) return n.parts;
  if (n.kind == NodeKind::Rigid && n.activity.is_identity()) return {};
  return {a};
}

void Engine::push_letter(std::vector<NodeId>& stack, NodeId letter) {
  if (!stack.empty()) {
    NodeId top = stack.back();
    const Node& t = node(top);
    const Node& l = node(letter);
    if (t.kind == NodeKind::Rigid && l.kind == NodeKind::Rigid) {
      Perm merged = treeaut::compose(t.activity, l.activity);
      stack.pop_back();
      if (!merged.is_identity()) stack.push_back(mk_rigid(merged));
      return;
    }
    if ((t.kind == NodeKind::Inverse && t.parts[0] == letter) ||
        (l.kind == NodeKind::Inverse && l.parts[0] == top)) {
      stack.pop_back();
      return;
    }
    std::optional<NAdic> top_exponent = letter_exponent(top);
    if (top_exponent) {
      std::optional<NAdic> letter_exp = letter_exponent(letter);
      if (letter_exp) {
        // Adjacent adding-machine powers fold into one letter. Without this the
        // sections of conjugated words grow a letter pair per level and the
        // bisimulation never closes.
        stack.pop_back();
        NAdic sum = *top_exponent + *letter_exp;
        if (sum.value() != 0) stack.push_back(tau_pow_adic(sum).id);
        return;
      }
    }
  }
  stack.push_back(letter);
}

std::optional<NAdic> Engine::letter_exponent(NodeId a) const {
  auto it = tau_exponents_.find(a);
  if (it != tau_exponents_.end()) return it->second;
  const Node& n = node(a);
  if (n.kind == NodeKind::Inverse) {
    auto inner = tau_exponents_.find(n.parts[0]);
    if (inner != tau_exponents_.end()) return -inner->second;
  }
  return std::nullopt;
}

NodeId Engine::compose_ids(NodeId a, NodeId b) {
  const int degree = node(a).degree;
  if (node(b).degree != degree) throw std::invalid_argument("degree mismatch in composition");
  std::vector<NodeId> stack = letters_of(a);
  for (NodeId letter : letters_of(b)) push_letter(stack, letter);
  return mk_word(degree, stack);
}

NodeId Engine::inverse_id(NodeId a) {
  const Node& n = node(a);
  switch (n.kind) {
    case NodeKind::Rigid:
      return mk_rigid(n.activity.inverse());
    case NodeKind::Inverse:
      return n.parts[0];
    case NodeKind::Wreath:
    case NodeKind::SelfRef:
      return mk_inverse_atom(a);
    case NodeKind::Word: {
      std::vector<NodeId> letters;
      letters.reserve(n.parts.size());
      for (auto it = n.parts.rbegin(); it != n.parts.rend(); ++it) {
        const Node& l = node(*it);
        if (l.kind == NodeKind::Rigid) {
          letters.push_back(mk_rigid(l.activity.inverse()));
        } else if (l.kind == NodeKind::Inverse) {
          letters.push_back(l.parts[0]);
        } else {
          letters.push_back(mk_inverse_atom(*it));
        }
      }
      return mk_word(n.degree, letters);
    }
  }
  throw std::logic_error("unreachable");
}

int Engine::intern_system(const std::string& key, int degree, std::vector<Perm> activities,
                          bool& existed) {
  auto it = system_index_.find(key);
  if (it != system_index_.end()) {
    existed = true;
    return it->second;
  }
  existed = false;
  int index = static_cast<int>(systems_.size());
  EqSystem sys;
  sys.degree = degree;
  sys.bodies.assign(activities.size(), -1);
  sys.activities = std::move(activities);
  systems_.push_back(std::move(sys));
  system_index_.emplace(key, index);
  return index;
}

NodeId Engine::resolve(NodeId selfref) {
  const Node& n = node(selfref);
  EqSystem& sys = systems_[static_cast<std::size_t>(n.system)];
  NodeId body = sys.bodies[static_cast<std::size_t>(n.variable)];
  if (body >= 0) return body;
  if (body == -2) throw std::invalid_argument("unguarded recursion while materializing a system");
  if (!sys.materialize) throw std::logic_error("equation system has no body and no materializer");
  sys.bodies[static_cast<std::size_t>(n.variable)] = -2;
  NodeId result = sys.materialize(n.variable);
  if (result == selfref) throw std::invalid_argument("unguarded recursion: variable defined as itself");
  if (node(result).degree != sys.degree) throw std::invalid_argument("system body degree mismatch");
  if (!(node(result).activity == node(selfref).activity)) {
    throw std::invalid_argument("system body activity disagrees with declared activity");
  }
  systems_[static_cast<std::size_t>(n.system)].bodies[static_cast<std::size_t>(n.variable)] = result;
  return result;
}

TreeAut Engine::rigid(const Perm& activity) { return handle(mk_rigid(activity)); }

TreeAut Engine::identity(int degree) { return handle(mk_rigid(Perm(degree))); }

TreeAut Engine::wreath(const std::vector<TreeAut>& children, const Perm& activity) {
  std::vector<NodeId> ids;
  ids.reserve(children.size());
  for (TreeAut child : children) ids.push_back(check(child));
  return handle(mk_wreath(activity.degree(), ids, activity));
}

TreeAut Engine::compose(TreeAut a, TreeAut b) { return handle(compose_ids(check(a), check(b))); }

TreeAut Engine::inverse(TreeAut a) { return handle(inverse_id(check(a))); }

TreeAut Engine::conjugate(TreeAut a, TreeAut b) {
  NodeId bi = check(b);
  return handle(compose_ids(compose_ids(inverse_id(bi), check(a)), bi));
}

TreeAut Engine::commutator(TreeAut a, TreeAut b) {
  NodeId ai = check(a);
  NodeId bi = check(b);
  return handle(
      compose_ids(compose_ids(compose_ids(inverse_id(ai), inverse_id(bi)), ai), bi));
}

TreeAut Engine::power_int(TreeAut a, long long exponent) {
  NodeId base = check(a);
  const int deg = node(base).degree;
  bool negative = exponent < 0;
  unsigned long long e = negative ? static_cast<unsigned long long>(-(exponent + 1)) + 1ULL
                                  : static_cast<unsigned long long>(exponent);
  if (negative) base = inverse_id(base);
  NodeId result = mk_rigid(Perm(deg));
  while (e > 0) {
    if (e & 1ULL) result = compose_ids(result, base);
    e >>= 1ULL;
    if (e > 0) base = compose_ids(base, base);
  }
  return handle(result);
}

TreeAut Engine::tau_pow_adic(const NAdic& exponent) {
  const int n = exponent.degree();
  if (exponent.is_zero()) {
    TreeAut e = identity(n);
    tau_exponents_.emplace(e.id, exponent);
    return e;
  }
  const std::string key = "taupow:" + std::to_string(n) + ":" + exponent.to_string();
  const Perm activity = Perm::rotation(n).power(exponent.residue());
  TreeAut result = recursive_element(key, activity, [this, exponent, n, activity](TreeAut) {
    std::vector<TreeAut> children;
    children.reserve(static_cast<std::size_t>(n));
    const NAdic shifted = exponent.shift_down();
    for (int i = 0; i < n; ++i) {
      const NAdic child = shifted + NAdic(n, delta2(NAdic(n, i), exponent));
      children.push_back(tau_pow_adic(child));
    }
    return wreath(children, activity);
  });
  tau_exponents_.emplace(result.id, exponent);
  return result;
}

TreeAut Engine::recursive_element(const std::string& key, const Perm& activity,
                                  std::function<TreeAut(TreeAut)> body) {
  bool existed = false;
  int sys = intern_system("rec:" + key, activity.degree(), {activity}, existed);
  if (existed && !(systems_[static_cast<std::size_t>(sys)].activities[0] == activity)) {
    throw std::invalid_argument("recursive element key reused with a different activity");
  }
  NodeId ref = mk_selfref(sys, 0);
  if (!existed) {
    systems_[static_cast<std::size_t>(sys)].materialize =
        [this, sys, body = std::move(body)](int) -> NodeId {
      TreeAut self = handle(mk_selfref(sys, 0));
      TreeAut result = body(self);
      return check(result);
    };
  }
  return handle(ref);
}

int Engine::degree(TreeAut a) const { return node(check(a)).degree; }

const Perm& Engine::activity(TreeAut a) const { return node(check(a)).activity; }

NodeId Engine::section_id(NodeId a, int letter) {
  const Node& n = node(a);
  if (letter < 0 || letter >= n.degree) {
    throw std::invalid_argument("section letter " + std::to_string(letter) +
                                " out of range for degree " + std::to_string(n.degree));
  }
  const std::uint64_t key = pack_pair(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(letter));
  auto it = section_memo_.find(key);
  if (it != section_memo_.end()) return it->second;
  NodeId result = -1;
  switch (n.kind) {
    case NodeKind::Rigid:
      result = mk_rigid(Perm(n.degree));
      break;
    case NodeKind::Wreath:
      result = n.parts[static_cast<std::size_t>(letter)];
      break;
    case NodeKind::SelfRef: {
      if (!sections_in_progress_.insert(key).second) {
        throw std::invalid_argument("unguarded recursion in equation system");
      }
      result = section_id(resolve(a), letter);
      sections_in_progress_.erase(key);
      break;
    }
    case NodeKind::Inverse: {
      // (a^{-1})|_y = (a|_{y'})^{-1} where y' is the image of y under the
      // root activity of a^{-1}.
      const int moved = n.activity.act(letter);
      result = inverse_id(section_id(n.parts[0], moved));
      break;
    }
    case NodeKind::Word: {
      NodeId acc = mk_rigid(Perm(n.degree));
      int point = letter;
      for (NodeId part : n.parts) {
        acc = compose_ids(acc, section_id(part, point));
        point = node(part).activity.act(point);
      }
      result = acc;
      break;
    }
  }
  section_memo_.emplace(key, result);
  return result;
}

TreeAut Engine::section(TreeAut a, int letter) { return handle(section_id(check(a), letter)); }

TreeAut Engine::section_at(TreeAut a, const std::vector<int>& vertex) {
  NodeId current = check(a);
  for (int letter : vertex) current = section_id(current, letter);
  return handle(current);
}

std::vector<int> Engine::apply_vertex(TreeAut a, const std::vector<int>& vertex) {
  NodeId current = check(a);
  std::vector<int> image;
  image.reserve(vertex.size());
  for (int letter : vertex) {
    const Node& n = node(current);
    if (letter < 0 || letter >= n.degree) {
      throw std::invalid_argument("vertex letter " + std::to_string(letter) +
                                  " out of range for degree " + std::to_string(n.degree));
    }
    image.push_back(n.activity.act(letter));
    current = section_id(current, letter);
  }
  return image;
}

bool Engine::equal_to_depth_ids(NodeId a, NodeId b, int depth) {
  if (a == b || depth <= 0) return true;
  const Node& na = node(a);
  const Node& nb = node(b);
  if (na.degree != nb.degree) throw std::invalid_argument("degree mismatch in comparison");
  if (na.activity != nb.activity) return false;
  if (depth == 1) return true;
  const NodeId lo = std::min(a, b);
  const NodeId hi = std::max(a, b);
  const std::uint64_t key = pack_triple(lo, hi, depth);
  auto it = depth_memo_.find(key);
  if (it != depth_memo_.end()) return it->second;
  bool equal = true;
  for (int y = 0; y < na.degree && equal; ++y) {
    equal = equal_to_depth_ids(section_id(a, y), section_id(b, y), depth - 1);
  }
  depth_memo_.emplace(key, equal);
  return equal;
}

bool Engine::equal_to_depth(TreeAut a, TreeAut b, int depth) {
  return equal_to_depth_ids(check(a), check(b), depth);
}

BisimResult Engine::equal_bisim(TreeAut a, TreeAut b, std::size_t budget) {
  NodeId ia = check(a);
  NodeId ib = check(b);
  if (node(ia).degree != node(ib).degree) throw std::invalid_argument("degree mismatch in comparison");
  BisimResult result;
  if (ia == ib) {
    result.kind = BisimResult::Kind::Equal;
    return result;
  }
  struct Item {
    NodeId a;
    NodeId b;
    std::vector<int> prefix;
  };
  std::deque<Item> queue;
  std::unordered_set<std::uint64_t> seen;
  auto key_of = [](NodeId x, NodeId y) {
    return pack_pair(static_cast<std::uint32_t>(std::min(x, y)),
                     static_cast<std::uint32_t>(std::max(x, y)));
  };
  seen.insert(key_of(ia, ib));
  queue.push_back({ia, ib, {}});
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    const Perm& pa = node(item.a).activity;
    const Perm& pb = node(item.b).activity;
    if (pa != pb) {
      int mismatch = 0;
      while (pa.act(mismatch) == pb.act(mismatch)) ++mismatch;
      result.kind = BisimResult::Kind::NotEqual;
      result.witness = item.prefix;
      result.witness.push_back(mismatch);
      result.pairs_explored = seen.size();
      return result;
    }
    const int n = node(item.a).degree;
    for (int y = 0; y < n; ++y) {
      NodeId sa = section_id(item.a, y);
      NodeId sb = section_id(item.b, y);
      if (sa == sb) continue;
      if (seen.insert(key_of(sa, sb)).second) {
        if (seen.size() > budget) {
          result.kind = BisimResult::Kind::Unknown;
          result.pairs_explored = seen.size();
          return result;
        }
        Item next{sa, sb, item.prefix};
        next.prefix.push_back(y);
        queue.push_back(std::move(next));
      }
    }
  }
  result.kind = BisimResult::Kind::Equal;
  result.pairs_explored = seen.size();
  return result;
}

bool Engine::commutes_to_depth(TreeAut a, TreeAut b, int depth) {
  NodeId ia = check(a);
  NodeId ib = check(b);
  return equal_to_depth_ids(compose_ids(ia, ib), compose_ids(ib, ia), depth);
}

bool Engine::is_level_transitive(TreeAut a, int level) {
  NodeId id = check(a);
  if (level < 0) throw std::invalid_argument("level must be nonnegative");
  if (level == 0) return true;
  const int n = node(id).degree;
  long long total = 1;
  for (int i = 0; i < level; ++i) {
    total *= n;
    if (total > 4096) {
      throw std::invalid_argument("level transitivity guarded to n^level <= 4096");
    }
  }
  const std::vector<int> start(static_cast<std::size_t>(level), 0);
  std::vector<int> current = start;
  long long steps = 0;
  do {
    current = apply_vertex(handle(id), current);
    ++steps;
  } while (current != start && steps <= total);
  return steps == total;
}

StateGraph Engine::state_graph(TreeAut a, std::size_t budget) {
  NodeId root = check(a);
  StateGraph graph;
  std::unordered_map<NodeId, std::size_t> index;
  graph.states.push_back(root);
  index.emplace(root, 0);
  for (std::size_t i = 0; i < graph.states.size(); ++i) {
    NodeId state = graph.states[i];
    const int n = node(state).degree;
    for (int y = 0; y < n; ++y) {
      NodeId target = section_id(state, y);
      auto it = index.find(target);
      std::size_t target_index = 0;
      if (it == index.end()) {
        if (graph.states.size() >= budget) {
          graph.complete = false;
          graph.states_explored = graph.states.size();
          return graph;
        }
        target_index = graph.states.size();
        index.emplace(target, target_index);
        graph.states.push_back(target);
      } else {
        target_index = it->second;
      }
      graph.edges.push_back({i, y, node(state).activity.act(y), target_index});
    }
  }
  graph.complete = true;
  graph.states_explored = graph.states.size();
  return graph;
}

std::string Engine::portrait(TreeAut a, int depth, bool names) {
  NodeId root = check(a);
  std::function<std::string(NodeId, int, bool)> render = [&](NodeId id, int remaining,
                                                             bool is_root) -> std::string {
    if (!is_root && names) {
      auto it = names_.find(id);
      if (it != names_.end()) return it->second;
    }
    if (remaining <= 0) return "•";
    const Node& n = node(id);
    std::ostringstream out;
    out << '(';
    for (int y = 0; y < n.degree; ++y) {
      if (y > 0) out << ", ";
      out << render(section_id(id, y), remaining - 1, false);
    }
    out << ')' << n.activity.to_string();
    return out.str();
  };
  return render(root, depth, true);
}

void Engine::register_name(TreeAut a, const std::string& name) {
  names_.emplace(check(a), name);
}

std::optional<std::string> Engine::name_of(TreeAut a) const {
  auto it = names_.find(check(a));
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

std::optional<NAdic> Engine::tau_exponent_of(TreeAut a) const {
  auto it = tau_exponents_.find(check(a));
  if (it == tau_exponents_.end()) return std::nullopt;
  return it->second;
}

SystemBuilder::SystemBuilder(Engine& engine, int degree, int variable_count)
    : engine_(engine), degree_(degree) {
  if (degree < 2) throw std::invalid_argument("system degree must be at least 2");
  if (variable_count < 1) throw std::invalid_argument("a system needs at least one variable");
  definitions_.resize(static_cast<std::size_t>(variable_count));
}

void SystemBuilder::define(int variable, const std::vector<ChildSpec>& children,
                           const Perm& activity) {
  if (variable < 0 || static_cast<std::size_t>(variable) >= definitions_.size()) {
    throw std::invalid_argument("variable index out of range");
  }
  if (activity.degree() != degree_) throw std::invalid_argument("activity degree mismatch");
  if (static_cast<int>(children.size()) != degree_) {
    throw std::invalid_argument("expected " + std::to_string(degree_) + " children");
  }
  for (const ChildSpec& child : children) {
    if (child.variable >= 0) {
      if (static_cast<std::size_t>(child.variable) >= definitions_.size()) {
        throw std::invalid_argument("child references variable " +
                                    std::to_string(child.variable) + " outside the system");
      }
    } else if (!child.node.valid()) {
      throw std::invalid_argument("child spec has neither node nor variable");
    }
  }
  Definition& def = definitions_[static_cast<std::size_t>(variable)];
  def.defined = true;
  def.children = children;
  def.activity = activity;
}

std::vector<TreeAut> SystemBuilder::build() {
  if (built_) throw std::invalid_argument("system already built");
  built_ = true;
  for (std::size_t i = 0; i < definitions_.size(); ++i) {
    if (!definitions_[i].defined) {
      throw std::invalid_argument("variable " + std::to_string(i) + " has no definition");
    }
  }
  std::ostringstream key;
  key << "sysb:" << degree_;
  std::vector<Perm> activities;
  for (std::size_t i = 0; i < definitions_.size(); ++i) {
    const Definition& def = definitions_[i];
    activities.push_back(def.activity);
    key << "|v" << i << ":act=";
    for (int v : def.activity.images()) key << v << ',';
    key << ":ch=";
    for (const ChildSpec& child : def.children) {
      if (child.variable >= 0) {
        key << 'V' << child.variable;
        if (child.postfactor.valid()) key << '*' << engine_.check(child.postfactor);
      } else {
        key << 'N' << engine_.check(child.node);
      }
      key << ';';
    }
  }
  bool existed = false;
  int sys = engine_.intern_system(key.str(), degree_, activities, existed);
  std::vector<TreeAut> handles;
  for (std::size_t i = 0; i < definitions_.size(); ++i) {
    handles.push_back(engine_.handle(engine_.mk_selfref(sys, static_cast<int>(i))));
  }
  if (!existed) {
    for (std::size_t i = 0; i < definitions_.size(); ++i) {
      const Definition& def = definitions_[i];
      std::vector<NodeId> children;
      for (const ChildSpec& child : def.children) {
        if (child.variable >= 0) {
          NodeId ref = engine_.mk_selfref(sys, child.variable);
          if (child.postfactor.valid()) {
            ref = engine_.compose_ids(ref, engine_.check(child.postfactor));
          }
          children.push_back(ref);
        } else {
          NodeId id = engine_.check(child.node);
          if (engine_.node(id).degree != degree_) {
            throw std::invalid_argument("child degree mismatch");
          }
          children.push_back(id);
        }
      }
      engine_.systems_[static_cast<std::size_t>(sys)].bodies[i] =
          engine_.mk_wreath(degree_, children, def.activity);
    }
  }
  return handles;
}

std::string to_dot(Engine& engine, const StateGraph& graph) {
  std::ostringstream out;
  out << "digraph automaton {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (std::size_t i = 0; i < graph.states.size(); ++i) {
    std::string label = "s" + std::to_string(i);
    auto name = engine.name_of(TreeAut{&engine, graph.states[i]});
    if (name) label += "\\n" + escape_dot(*name);
    out << "  s" << i << " [label=\"" << label << "\"";
    if (i == 0) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const StateGraph::Edge& edge : graph.edges) {
    out << "  s" << edge.from << " -> s" << edge.to << " [label=\"" << edge.input << "|"
        << edge.output << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace treeaut
