#include "umk/balltree.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace umk {

BallTree BallTree::build(const std::vector<NodeSpec>& spec) {
  std::map<int, int> pos;  // external id -> spec index
  int root_ext = -1;
  for (size_t i = 0; i < spec.size(); ++i) {
    if (spec[i].id < 0) fail(errc::model_error, "node ids must be nonnegative");
    if (!pos.emplace(spec[i].id, static_cast<int>(i)).second)
      fail(errc::model_error, "duplicate node id " + std::to_string(spec[i].id));
    if (spec[i].parent < 0) {
      if (root_ext >= 0) fail(errc::model_error, "more than one root");
      root_ext = spec[i].id;
    }
  }
  if (root_ext < 0) fail(errc::model_error, "no root node");

  std::map<int, std::vector<int>> kids;  // external id -> child external ids
  for (const auto& n : spec)
    if (n.parent >= 0) {
      if (!pos.count(n.parent))
        fail(errc::model_error, "unknown parent id " + std::to_string(n.parent));
      kids[n.parent].push_back(n.id);
    }

  // level-order remap
  BallTree t;
  std::map<int, int> remap;
  std::deque<int> queue{root_ext};
  while (!queue.empty()) {
    int ext = queue.front();
    queue.pop_front();
    remap[ext] = static_cast<int>(t.nodes_.size());
    const NodeSpec& s = spec[pos[ext]];
    Node n;
    n.external_id = ext;
    n.label = s.label;
    n.phi_q = s.phi;
    n.phi = to_double(s.phi);
    n.mass_q = s.mass;
    t.nodes_.push_back(std::move(n));
    auto it = kids.find(ext);
    if (it != kids.end())
      for (int c : it->second) queue.push_back(c);
  }
  if (t.nodes_.size() != spec.size()) fail(errc::model_error, "tree is not connected");

  for (const auto& s : spec) {
    int v = remap[s.id];
    if (s.parent >= 0) {
      t.nodes_[v].parent = remap[s.parent];
      t.nodes_[t.nodes_[v].parent].children.push_back(v);
    }
  }
  for (auto& n : t.nodes_) std::sort(n.children.begin(), n.children.end());

  t.finalize();
  return t;
}

void BallTree::finalize() {
  // depths (level order guarantees parents precede children)
  max_depth_ = 0;
  for (size_t v = 1; v < nodes_.size(); ++v) {
    nodes_[v].depth = nodes_[nodes_[v].parent].depth + 1;
    max_depth_ = std::max(max_depth_, nodes_[v].depth);
  }

  leaf_ordinal_.assign(nodes_.size(), -1);
  for (size_t v = 0; v < nodes_.size(); ++v) {
    Node& n = nodes_[v];
    if (n.leaf()) {
      if (n.mass_q <= 0) fail(errc::mass_gap, "leaf " + std::to_string(n.external_id) +
                                                  " needs positive mass");
      leaf_ordinal_[v] = static_cast<int>(leaves_.size());
      leaves_.push_back(static_cast<int>(v));
    } else {
      if (n.children.size() < 2)
        fail(errc::degree_one,
             "internal node " + std::to_string(n.external_id) + " has one child");
      if (n.phi_q <= 0)
        fail(errc::non_monotone_radius,
             "internal node " + std::to_string(n.external_id) + " needs positive radius");
      if (n.parent >= 0 && !(n.phi_q < nodes_[n.parent].phi_q))
        fail(errc::non_monotone_radius,
             "phi must strictly decrease from parent to child at node " +
                 std::to_string(n.external_id));
    }
  }
  if (leaves_.empty()) fail(errc::model_error, "tree has no leaves");

  // derived masses, bottom-up; a declared internal mass must match the sum
  for (size_t i = nodes_.size(); i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.leaf()) {
      Rational sum{0};
      for (int c : n.children) sum += nodes_[c].mass_q;
      if (n.mass_q != 0 && n.mass_q != sum)
        fail(errc::mass_mismatch, "declared mass at node " + std::to_string(n.external_id) +
                                      " differs from the sum over children");
      n.mass_q = sum;
    }
    n.mass = to_double(n.mass_q);
  }
}

BallTree BallTree::padic(long p, int depth, int dim) {
  if (p < 2 || depth < 1 || dim < 1) fail(errc::model_error, "padic tree needs p>=2, depth>=1, dim>=1");
  long width = 1;
  for (int i = 0; i < dim; ++i) width *= p;

  std::vector<NodeSpec> spec;
  spec.reserve(64);
  Rational leaf_mass = rational_pow(Rational(p), -static_cast<long>(depth) * dim);

  // level-order generation; node v at level k has children v*width + 1..width
  struct Item { int id; int parent; int level; std::string label; };
  std::deque<Item> queue{{0, -1, 0, ""}};
  int next_id = 1;
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    NodeSpec n;
    n.id = it.id;
    n.parent = it.parent;
    n.label = it.label;
    if (it.level < depth) {
      n.phi = rational_pow(Rational(p), -it.level);
      for (long c = 0; c < width; ++c) {
        std::string lab = it.label;
        if (dim == 1) lab += static_cast<char>('0' + c);
        else lab += (it.label.empty() ? "" : ".") + std::to_string(c);
        queue.push_back({next_id++, it.id, it.level + 1, lab});
      }
    } else {
      n.mass = leaf_mass;
    }
    spec.push_back(std::move(n));
  }
  return build(spec);
}

BallTree BallTree::qp_window(long p, int top, int levels) {
  if (p < 2 || levels < 1) fail(errc::model_error, "qp window needs p>=2, levels>=1");
  std::vector<NodeSpec> spec;
  struct Item { int id; int parent; int level; };
  std::deque<Item> queue{{0, -1, 0}};
  int next_id = 1;
  Rational leaf_mass = rational_pow(Rational(p), top - levels);
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    NodeSpec n;
    n.id = it.id;
    n.parent = it.parent;
    if (it.level < levels) {
      n.phi = rational_pow(Rational(p), top - it.level);
      for (long c = 0; c < p; ++c) queue.push_back({next_id++, it.id, it.level + 1});
    } else {
      n.mass = leaf_mass;
    }
    spec.push_back(std::move(n));
  }
  return build(spec);
}

int BallTree::leaf_ordinal(int node_id) const {
  if (node_id < 0 || node_id >= size() || leaf_ordinal_[node_id] < 0)
    fail(errc::unknown_leaf, "node " + std::to_string(node_id) + " is not a leaf");
  return leaf_ordinal_[node_id];
}

int BallTree::leaf_by_label(const std::string& label) const {
  for (int v : leaves_)
    if (nodes_[v].label == label) return v;
  fail(errc::unknown_leaf, "no leaf labelled '" + label + "'");
}

int BallTree::confluent(int a, int b) const {
  leaf_ordinal(a);
  leaf_ordinal(b);
  while (a != b) {
    if (nodes_[a].depth >= nodes_[b].depth) a = nodes_[a].parent;
    else b = nodes_[b].parent;
  }
  return a;
}

double BallTree::distance(int a, int b) const {
  if (a == b) { leaf_ordinal(a); return 0.0; }
  return nodes_[confluent(a, b)].phi;
}

Rational BallTree::distance_q(int a, int b) const {
  if (a == b) { leaf_ordinal(a); return Rational(0); }
  return nodes_[confluent(a, b)].phi_q;
}

std::vector<int> BallTree::root_path(int v) const {
  std::vector<int> path;
  for (int u = v; u >= 0; u = nodes_[u].parent) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace umk
