#include "leafrate/rooted_tree.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "leafrate/errors.hpp"

namespace leafrate {
namespace {

bool valid_level_sequence(const std::vector<int>& s) {
    if (s.empty() || s[0] != 0) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > s[i - 1] + 1) return false;
    }
    return true;
}

// Canonical code of the subtree rooted at v, levels relative to v.
std::vector<int> canonical_code(const std::vector<std::vector<int>>& kids,
                                int v) {
    std::vector<std::vector<int>> sub;
    sub.reserve(kids[v].size());
    for (int c : kids[v]) sub.push_back(canonical_code(kids, c));
    std::sort(sub.begin(), sub.end(), std::greater<>());
    std::vector<int> code{0};
    for (const auto& s : sub) {
        for (int lv : s) code.push_back(lv + 1);
    }
    return code;
}

std::vector<std::vector<int>> children_of_levels(const std::vector<int>& s) {
    const int n = static_cast<int>(s.size());
    std::vector<std::vector<int>> kids(n);
    std::vector<int> stack;  // vertices on the current root path
    for (int i = 0; i < n; ++i) {
        while (!stack.empty() && s[stack.back()] != s[i] - 1) stack.pop_back();
        if (!stack.empty()) kids[stack.back()].push_back(i);
        stack.push_back(i);
    }
    return kids;
}

}  // namespace

RootedTree RootedTree::single() {
    RootedTree t;
    t.levels_ = {0};
    return t;
}

RootedTree RootedTree::from_levels(const std::vector<int>& levels) {
    if (!valid_level_sequence(levels))
        throw structural_error("not a valid level sequence");
    RootedTree t;
    t.levels_ = canonical_code(children_of_levels(levels), 0);
    return t;
}

RootedTree RootedTree::from_parents(const std::vector<int>& parent, int root) {
    const int n = static_cast<int>(parent.size());
    if (root < 0 || root >= n || parent[root] != -1)
        throw structural_error("root must have parent -1");
    std::vector<std::vector<int>> kids(n);
    for (int i = 0; i < n; ++i) {
        if (i == root) continue;
        if (parent[i] < 0 || parent[i] >= n)
            throw structural_error("parent index out of range");
        kids[parent[i]].push_back(i);
    }
    // reachability check catches cycles among non-root vertices
    std::vector<int> order{root};
    std::vector<char> seen(n, 0);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (int c : kids[order[i]]) {
            if (seen[c]) throw structural_error("cyclic parent structure");
            seen[c] = 1;
            order.push_back(c);
        }
    }
    if (static_cast<int>(order.size()) != n)
        throw structural_error("disconnected parent structure");
    RootedTree t;
    t.levels_ = canonical_code(kids, root);
    return t;
}

RootedTree RootedTree::from_adjacency(const std::vector<std::vector<int>>& adj,
                                      int root) {
    const int n = static_cast<int>(adj.size());
    if (root < 0 || root >= n) throw structural_error("root out of range");
    std::vector<int> parent(n, -2);
    parent[root] = -1;
    std::vector<int> order{root};
    std::size_t edges_seen = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (int u : adj[v]) {
            if (u < 0 || u >= n) throw structural_error("vertex out of range");
            ++edges_seen;
            if (u == parent[v]) continue;
            if (parent[u] != -2) throw structural_error("input contains a cycle");
            parent[u] = v;
            order.push_back(u);
        }
    }
    if (static_cast<int>(order.size()) != n)
        throw structural_error("disconnected input");
    if (edges_seen != 2u * (n - 1) && n > 1)
        throw structural_error("edge count does not match a tree");
    return from_parents(parent, root);
}

RootedTree RootedTree::from_canonical(std::vector<int> levels) {
    assert(is_canonical_level_sequence(levels));
    RootedTree t;
    t.levels_ = std::move(levels);
    return t;
}

std::vector<int> RootedTree::parents() const {
    const int n = size();
    std::vector<int> parent(n, -1);
    std::vector<int> stack;
    for (int i = 0; i < n; ++i) {
        while (!stack.empty() && levels_[stack.back()] != levels_[i] - 1)
            stack.pop_back();
        parent[i] = stack.empty() ? -1 : stack.back();
        stack.push_back(i);
    }
    return parent;
}

std::vector<std::vector<int>> RootedTree::children() const {
    return children_of_levels(levels_);
}

bool RootedTree::has_children(int v) const {
    return v + 1 < size() && levels_[v + 1] == levels_[v] + 1;
}

std::string RootedTree::to_text() const {
    std::ostringstream os;
    for (int i = 0; i < size(); ++i) {
        if (i) os << ' ';
        os << levels_[i];
    }
    return os.str();
}

RootedTree RootedTree::parse(const std::string& line) {
    std::istringstream is(line);
    std::vector<int> levels;
    int v;
    while (is >> v) levels.push_back(v);
    if (!is.eof()) throw structural_error("trailing garbage in tree text");
    return from_levels(levels);
}

int leaf_count(const RootedTree& t) {
    if (t.size() == 1) return 1;
    int leaves = 0;
    for (int v = 1; v < t.size(); ++v)
        if (!t.has_children(v)) ++leaves;
    return leaves;
}

ParityCounts parity_counts(const RootedTree& t) {
    ParityCounts pc;
    for (int lv : t.levels()) {
        if (lv % 2 == 1)
            ++pc.p;
        else
            ++pc.neg;
    }
    pc.chi = pc.p - pc.neg;
    return pc;
}

std::pair<int, int> arnold_star_counts(const RootedTree& t) {
    int even_star = 0, odd_star = 0;
    const auto& s = t.levels();
    for (int v = 1; v < t.size(); ++v) {
        if (!t.has_children(v)) continue;
        if (s[v] % 2 == 1)
            ++even_star;
        else
            ++odd_star;
    }
    return {even_star, odd_star};
}

TreeStats stats(const RootedTree& t) {
    TreeStats st;
    st.n = t.size();
    st.leaves = leaf_count(t);
    ParityCounts pc = parity_counts(t);
    st.p = pc.p;
    st.neg = pc.neg;
    st.chi = pc.chi;
    auto [es, os] = arnold_star_counts(t);
    st.even_star = es;
    st.odd_star = os;
    return st;
}

RootedTree rerooted(const RootedTree& t, int v) {
    const int n = t.size();
    if (v < 0 || v >= n) throw contract_error("rerooted: vertex out of range");
    auto parent = t.parents();
    std::vector<std::vector<int>> adj(n);
    for (int i = 1; i < n; ++i) {
        adj[i].push_back(parent[i]);
        adj[parent[i]].push_back(i);
    }
    return RootedTree::from_adjacency(adj, v);
}

bool is_canonical_level_sequence(const std::vector<int>& s) {
    if (!valid_level_sequence(s)) return false;
    const int n = static_cast<int>(s.size());
    // subtree extent per vertex
    std::vector<int> end(n);
    for (int i = 0; i < n; ++i) {
        int j = i + 1;
        while (j < n && s[j] > s[i]) ++j;
        end[i] = j;
    }
    // consecutive child subtrees must be lexicographically nonincreasing
    for (int v = 0; v < n; ++v) {
        int c = v + 1;
        int prev = -1;
        while (c < end[v]) {
            if (prev >= 0) {
                bool prev_less = std::lexicographical_compare(
                    s.begin() + prev, s.begin() + c, s.begin() + c,
                    s.begin() + end[c]);
                if (prev_less) return false;
            }
            prev = c;
            c = end[c];
        }
    }
    return true;
}

}  // namespace leafrate
