#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace leafrate {

// A rooted unlabelled tree in canonical form.
//
// The canonical code is the level sequence of the depth-first traversal
// that is lexicographically maximal over all orderings of children; the
// root has level 0.  Two rooted trees are isomorphic iff their codes are
// equal, so RootedTree values can be compared and hashed directly.
class RootedTree {
public:
    // The one-vertex tree.
    static RootedTree single();

    // Canonicalizes an arbitrary level sequence (any child order).
    // Throws structural_error if the sequence is not a valid DFS level
    // sequence.
    static RootedTree from_levels(const std::vector<int>& levels);

    // Canonicalizes a parent-array description.  parent[root] must be -1,
    // every other entry a valid vertex index.  Throws structural_error on
    // cycles or disconnected input.
    static RootedTree from_parents(const std::vector<int>& parent, int root);

    // Canonicalizes an adjacency-list description with a distinguished
    // root.  Throws structural_error unless the graph is a tree.
    static RootedTree from_adjacency(const std::vector<std::vector<int>>& adj,
                                     int root);

    // Wraps a sequence that is already canonical (checked by assertion in
    // debug builds only).  Used by the enumeration stream.
    static RootedTree from_canonical(std::vector<int> levels);

    int size() const { return static_cast<int>(levels_.size()); }
    const std::vector<int>& levels() const { return levels_; }

    // parent[i] in canonical order; parent[0] == -1.
    std::vector<int> parents() const;
    std::vector<std::vector<int>> children() const;

    bool has_children(int v) const;

    // One line of space-separated levels, e.g. "0 1 2 2 1".
    std::string to_text() const;
    static RootedTree parse(const std::string& line);

    auto operator<=>(const RootedTree&) const = default;

private:
    RootedTree() = default;
    std::vector<int> levels_;
};

struct ParityCounts {
    int p = 0;    // vertices at odd edge-distance from the root
    int neg = 0;  // vertices at even distance, including the root
    int chi = 0;  // p - neg
};

struct TreeStats {
    int n = 0;
    int leaves = 0;
    int p = 0;
    int neg = 0;
    int chi = 0;
    int even_star = 0;  // non-leaf vertices at odd distance
    int odd_star = 0;   // non-leaf vertices at even nonzero distance
};

// Number of multiplicity-one non-root vertices; 1 for the single vertex,
// whose root counts as a leaf by convention.
int leaf_count(const RootedTree& t);

ParityCounts parity_counts(const RootedTree& t);

// (even_star, odd_star)
std::pair<int, int> arnold_star_counts(const RootedTree& t);

TreeStats stats(const RootedTree& t);

// The same tree re-rooted at vertex v (canonical index).
RootedTree rerooted(const RootedTree& t, int v);

// True iff `levels` is the canonical (lexicographically maximal) level
// sequence of the tree it describes.
bool is_canonical_level_sequence(const std::vector<int>& levels);

}  // namespace leafrate
