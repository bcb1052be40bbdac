#pragma once

#include <vector>

#include "leafrate/rooted_tree.hpp"

namespace leafrate {

// Branches of t at vertex v: the connected components of t minus v, each
// rooted at its vertex nearest to v.  Their sizes sum to n - 1.
std::vector<RootedTree> branches_at(const RootedTree& t, int v);

// A vertex all of whose branches have at most n/2 vertices, found by
// repeatedly stepping into the unique oversized branch.
int find_half_vertex(const RootedTree& t);

// Greedy signed walk: steps of sizes c[1], c[2], ... (c[0] is skipped),
// each directed toward `target`.  Requires c nonincreasing and nonnegative
// with |target| <= sum(c).  The returned signs satisfy
// |sum_i signs[i] * c[i+1] - target| <= c[0].
std::vector<int> sign_walk(const std::vector<int>& c, long long target);

// Contracts the edge between vertex `child` (canonical index, child >= 1)
// and its parent; the merged vertex inherits the parent's position, so the
// root stays the root.
RootedTree contract_edge(const RootedTree& t, int child);

// Inserts a new vertex w joined to v by a new edge.  The children of v
// listed in moved_children are re-attached to w.  With root_side set, v's
// parent edge also moves to w (w ends up between v and its parent); if v
// is the root, w becomes the new root.  Contracting the new edge recovers
// t.
RootedTree insert_edge(const RootedTree& t, int v,
                       const std::vector<int>& moved_children,
                       bool root_side = false);

// True iff contracting some edge of `larger` yields `smaller`.
bool is_edge_contraction(const RootedTree& smaller, const RootedTree& larger);

// Sequence t_1, ..., t_k with chi(t_k) = c, each t_i obtained from its
// predecessor by one edge insertion (equivalently, the predecessor by one
// contraction), k <= 3 + 3*log2(n).  Requires |c| <= |chi(t0)|.  Returns
// an empty sequence when chi(t0) == c already.
std::vector<RootedTree> balance_chi(const RootedTree& t0, int c);

// Working representation for tree surgery.  Vertex indices are stable
// under insertions, which lets callers carry per-vertex data through a
// sequence of operations (e.g. strip leaves, balance, re-attach).
struct MutableTree {
    std::vector<std::vector<int>> adj;
    int root = 0;

    static MutableTree from(const RootedTree& t);
    RootedTree freeze() const { return RootedTree::from_adjacency(adj, root); }

    int size() const { return static_cast<int>(adj.size()); }
    int add_vertex();
    void add_edge(int a, int b);
    // New leaf w adjacent to v.
    int attach_leaf(int v);
    // New vertex w adjacent to v; the edges from v to the vertices in
    // moved_neighbors are re-attached to w.  Returns w.  The root marker
    // is left at its old index.
    int split_vertex(int v, const std::vector<int>& moved_neighbors);
};

// In-place version of balance_chi; may change t.root (the final sign fix
// re-roots at a freshly inserted vertex).  Appends a canonical snapshot to
// *snapshots after each insertion when snapshots is non-null.  Returns the
// number of insertions.
int balance_chi_in_place(MutableTree& t, int c,
                         std::vector<RootedTree>* snapshots = nullptr);

}  // namespace leafrate
