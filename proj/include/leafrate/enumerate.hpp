#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "leafrate/rooted_tree.hpp"

namespace leafrate {

// Successor-based stream over the canonical level sequences of all rooted
// unlabelled trees on n vertices, in decreasing lexicographic order.  The
// first sequence is the path (0,1,...,n-1), the last the star (0,1,...,1).
class TreeGenerator {
public:
    explicit TreeGenerator(int n);

    // Starts the stream at the lexicographically largest canonical
    // sequence extending `prefix` (which must itself be canonical).
    TreeGenerator(int n, const std::vector<int>& prefix);

    bool done() const { return done_; }
    const std::vector<int>& levels() const { return seq_; }
    RootedTree tree() const { return RootedTree::from_canonical(seq_); }

    // Advances to the successor.  Returns false when the stream (or, for a
    // prefix-restricted stream, the block of sequences sharing the prefix)
    // is exhausted.
    bool next();

private:
    std::vector<int> seq_;
    int prefix_len_ = 0;
    bool done_ = false;
};

// Lexicographically largest canonical sequence of length n extending the
// canonical prefix.  Every canonical sequence extends (append 1s), so this
// always exists.
std::vector<int> max_canonical_completion(std::vector<int> prefix, int n);

// Deterministic partition keys for parallel consumption: the canonical
// sequences of length prefix_len, in stream order.  Trees of size n whose
// code starts with the same key form one contiguous block of the stream.
std::vector<std::vector<int>> enumeration_prefixes(int n, int prefix_len);

template <class Visit>
void for_each_level_sequence(int n, Visit&& visit) {
    if (n < 1) return;
    for (TreeGenerator g(n); !g.done(); g.next()) visit(g.levels());
}

template <class Visit>
void for_each_tree(int n, Visit&& visit) {
    for_each_level_sequence(n, [&](const std::vector<int>& s) {
        visit(RootedTree::from_canonical(s));
    });
}

// Sums weight(levels) over all trees on n vertices.  Serial reference.
std::uint64_t serial_count(
    int n, const std::function<std::uint64_t(const std::vector<int>&)>& weight);

// OpenMP kernel: same sum, with the stream partitioned into prefix blocks
// distributed dynamically over threads.  weight must be safe to call
// concurrently.
std::uint64_t parallel_count(
    int n, const std::function<std::uint64_t(const std::vector<int>&)>& weight,
    int threads = 0);

// Total number of rooted trees on n vertices (serial stream walk).
std::uint64_t count_trees(int n);

}  // namespace leafrate
