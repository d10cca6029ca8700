// Rooted tree of closed balls: the finite model of a compact ultra-metric
// measure space. Leaves are atoms with positive mass, internal nodes carry
// the ultra-metric element phi, strictly decreasing away from the root.
#pragma once

#include "umk/errors.hpp"
#include "umk/rational.hpp"

#include <string>
#include <vector>

namespace umk {

struct NodeSpec {
  int id = -1;
  int parent = -1;       // -1 marks the root
  Rational phi{0};       // internal nodes: ball radius > 0
  Rational mass{0};      // leaves: atom mass > 0
  std::string label;     // optional (digit strings on p-adic trees)
};

class BallTree {
 public:
  struct Node {
    int parent = -1;
    std::vector<int> children;
    int depth = 0;
    double phi = 0.0;
    Rational phi_q{0};
    double mass = 0.0;
    Rational mass_q{0};
    int external_id = -1;
    std::string label;
    bool leaf() const { return children.empty(); }
  };

  // Validating constructor; ids are remapped to a level-order layout.
  static BallTree build(const std::vector<NodeSpec>& spec);

  // Unit ball Z_p^dim to resolution p^-depth: level-k nodes have p^dim
  // children, phi(level k) = p^-k, leaf mass p^(-depth*dim).
  static BallTree padic(long p, int depth, int dim = 1);

  // Q_p window: the ball of radius p^top refined `levels` deep with Haar
  // masses (level-k radius p^(top-k), leaf mass p^(top-levels)).
  static BallTree qp_window(long p, int top, int levels);

  int root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int v) const { return nodes_[v]; }
  const std::vector<int>& leaves() const { return leaves_; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }

  int leaf_id(int leaf_ordinal) const { return leaves_[leaf_ordinal]; }
  int leaf_ordinal(int node_id) const;  // UnknownLeaf if not a leaf
  int leaf_by_label(const std::string& label) const;

  // Deepest common ancestor of two leaves.
  int confluent(int leaf_a, int leaf_b) const;

  // d(x,y) = phi(confluent), 0 on the diagonal.
  double distance(int leaf_a, int leaf_b) const;
  Rational distance_q(int leaf_a, int leaf_b) const;

  // Path root -> v (inclusive).
  std::vector<int> root_path(int v) const;

  double total_mass() const { return nodes_[0].mass; }
  const Rational& total_mass_q() const { return nodes_[0].mass_q; }

  int max_depth() const { return max_depth_; }

 private:
  std::vector<Node> nodes_;
  std::vector<int> leaves_;
  std::vector<int> leaf_ordinal_;  // node id -> ordinal or -1
  int max_depth_ = 0;

  void finalize();
};

}  // namespace umk
