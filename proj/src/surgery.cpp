#include "leafrate/surgery.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

#include "leafrate/errors.hpp"

namespace leafrate {
namespace {

std::vector<std::vector<int>> adjacency_of(const RootedTree& t) {
    const int n = t.size();
    std::vector<std::vector<int>> adj(n);
    auto parent = t.parents();
    for (int i = 1; i < n; ++i) {
        adj[i].push_back(parent[i]);
        adj[parent[i]].push_back(i);
    }
    return adj;
}

}  // namespace

std::vector<RootedTree> branches_at(const RootedTree& t, int v) {
    const int n = t.size();
    if (v < 0 || v >= n) throw contract_error("branches_at: vertex out of range");
    auto adj = adjacency_of(t);
    std::vector<RootedTree> out;
    for (int start : adj[v]) {
        // collect the component of start with v removed
        std::vector<int> comp{start};
        std::vector<int> par_local{-1};
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (int u : adj[comp[i]]) {
                if (u == v) continue;
                if (par_local[i] >= 0 && comp[par_local[i]] == u) continue;
                comp.push_back(u);
                par_local.push_back(static_cast<int>(i));
            }
        }
        std::vector<int> parent(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) parent[i] = par_local[i];
        out.push_back(RootedTree::from_parents(parent, 0));
    }
    return out;
}

int find_half_vertex(const RootedTree& t) {
    const int n = t.size();
    auto parent = t.parents();
    auto kids = t.children();
    std::vector<int> sz(n, 1);
    for (int i = n - 1; i >= 1; --i) sz[parent[i]] += sz[i];
    int v = 0;
    for (int steps = 0; steps <= n; ++steps) {
        int big = -1;  // neighbor opening the unique branch of size > n/2
        if (v != 0 && 2 * (n - sz[v]) > n) big = parent[v];
        for (int c : kids[v])
            if (2 * sz[c] > n) big = c;
        if (big < 0) return v;
        v = big;
    }
    // unreachable: the walk cannot revisit a vertex
    std::abort();
}

std::vector<int> sign_walk(const std::vector<int>& c, long long target) {
    long long total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0 || (i > 0 && c[i] > c[i - 1]))
            throw contract_error("sign_walk: list must be nonincreasing, >= 0");
        total += c[i];
    }
    if (std::llabs(target) > total)
        throw contract_error("sign_walk: |target| exceeds sum of steps");
    std::vector<int> signs;
    long long pos = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        int s = (target - pos >= 0) ? 1 : -1;
        signs.push_back(s);
        pos += s * c[i];
    }
    return signs;
}

RootedTree contract_edge(const RootedTree& t, int child) {
    const int n = t.size();
    if (child < 1 || child >= n)
        throw contract_error("contract_edge: not a child vertex");
    auto parent = t.parents();
    std::vector<int> new_parent;
    // drop `child`, re-parent its children to parent[child]
    std::vector<int> remap(n, -1);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        if (i != child) remap[i] = idx++;
    new_parent.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        if (i == child) continue;
        int p = parent[i];
        if (p == child) p = parent[child];
        new_parent[remap[i]] = (p < 0) ? -1 : remap[p];
    }
    return RootedTree::from_parents(new_parent, 0);
}

RootedTree insert_edge(const RootedTree& t, int v,
                       const std::vector<int>& moved_children, bool root_side) {
    const int n = t.size();
    if (v < 0 || v >= n) throw contract_error("insert_edge: vertex out of range");
    auto parent = t.parents();
    for (int c : moved_children) {
        if (c < 1 || c >= n || parent[c] != v)
            throw contract_error("insert_edge: not an edge at v");
    }
    const int w = n;
    std::vector<int> new_parent(n + 1);
    for (int i = 0; i < n; ++i) new_parent[i] = parent[i];
    int root = 0;
    if (root_side) {
        if (v == 0) {
            new_parent[w] = -1;
            new_parent[v] = w;
            root = w;
        } else {
            new_parent[w] = parent[v];
            new_parent[v] = w;
        }
    } else {
        new_parent[w] = v;
    }
    for (int c : moved_children) new_parent[c] = w;
    return RootedTree::from_parents(new_parent, root);
}

bool is_edge_contraction(const RootedTree& smaller, const RootedTree& larger) {
    if (larger.size() != smaller.size() + 1) return false;
    for (int child = 1; child < larger.size(); ++child) {
        if (contract_edge(larger, child) == smaller) return true;
    }
    // contraction of an edge at the root of a root-side insertion: the
    // larger tree's root merges into its only child
    auto kids = larger.children();
    if (kids[0].size() == 1) {
        RootedTree alt = rerooted(larger, kids[0][0]);
        for (int child = 1; child < alt.size(); ++child)
            if (contract_edge(alt, child) == smaller) return true;
    }
    return false;
}

MutableTree MutableTree::from(const RootedTree& t) {
    MutableTree m;
    m.adj = adjacency_of(t);
    m.root = 0;
    return m;
}

int MutableTree::add_vertex() {
    adj.emplace_back();
    return size() - 1;
}

void MutableTree::add_edge(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
}

int MutableTree::attach_leaf(int v) {
    int w = add_vertex();
    add_edge(v, w);
    return w;
}

int MutableTree::split_vertex(int v, const std::vector<int>& moved_neighbors) {
    int w = add_vertex();
    for (int u : moved_neighbors) {
        auto& av = adj[v];
        auto it = std::find(av.begin(), av.end(), u);
        if (it == av.end()) throw contract_error("split_vertex: not a neighbor");
        av.erase(it);
        std::replace(adj[u].begin(), adj[u].end(), v, w);
        adj[w].push_back(u);
    }
    add_edge(v, w);
    return w;
}

namespace {

// Recursive chi-balancing over components of a MutableTree.  `banned`
// holds the cut vertices separating the current component from the rest of
// the tree; the component root is the vertex nearest the innermost cut.
class Balancer {
public:
    Balancer(MutableTree& t, std::vector<RootedTree>* snapshots)
        : t_(t), snapshots_(snapshots) {}

    int insertions() const { return insertions_; }

    void adjust(int local_root, std::vector<int> banned, int target);

private:
    bool is_banned(const std::vector<int>& banned, int v) const {
        return std::find(banned.begin(), banned.end(), v) != banned.end();
    }

    std::vector<int> component(int start, const std::vector<int>& banned) const {
        std::vector<int> comp{start};
        std::vector<char> seen(t_.size(), 0);
        seen[start] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (int u : t_.adj[comp[i]]) {
                if (seen[u] || is_banned(banned, u)) continue;
                seen[u] = 1;
                comp.push_back(u);
            }
        }
        return comp;
    }

    // chi of the component of local_root, distances from local_root
    int chi(int local_root, const std::vector<int>& banned) const {
        std::vector<int> queue{local_root};
        std::vector<int> depth(t_.size(), -1);
        depth[local_root] = 0;
        int value = -1;  // the root itself
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int v = queue[i];
            for (int u : t_.adj[v]) {
                if (depth[u] >= 0 || is_banned(banned, u)) continue;
                depth[u] = depth[v] + 1;
                value += (depth[u] % 2 == 1) ? 1 : -1;
                queue.push_back(u);
            }
        }
        return value;
    }

    int half_vertex(const std::vector<int>& comp,
                    const std::vector<int>& banned) const;

    std::vector<int> branch_code(int branch_root,
                                 const std::vector<int>& banned) const {
        std::vector<int> comp = component(branch_root, banned);
        std::vector<std::vector<int>> adj_local(comp.size());
        std::vector<int> remap(t_.size(), -1);
        for (std::size_t i = 0; i < comp.size(); ++i) remap[comp[i]] = (int)i;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (int u : t_.adj[comp[i]])
                if (remap[u] >= 0) adj_local[i].push_back(remap[u]);
        return RootedTree::from_adjacency(adj_local, 0).levels();
    }

    void record() {
        ++insertions_;
        if (snapshots_) snapshots_->push_back(t_.freeze());
    }

    void attach(int v) {
        t_.attach_leaf(v);
        record();
    }

    // Two insertions flipping chi of the component to its negative: a new
    // vertex w between local_root and the innermost cut (w becomes the new
    // component root; at top level, the new tree root), then a leaf at w.
    void sign_fix(int local_root, const std::vector<int>& banned) {
        std::vector<int> moved;
        if (!banned.empty()) moved.push_back(banned.back());
        int w = t_.split_vertex(local_root, moved);
        if (banned.empty()) t_.root = w;
        record();
        attach(w);
    }

    MutableTree& t_;
    std::vector<RootedTree>* snapshots_;
    int insertions_ = 0;
};

int Balancer::half_vertex(const std::vector<int>& comp,
                          const std::vector<int>& banned) const {
    const int n = static_cast<int>(comp.size());
    int v = comp[0];
    while (true) {
        int big = -1;
        for (int u : t_.adj[v]) {
            if (is_banned(banned, u)) continue;
            std::vector<int> cut = banned;
            cut.push_back(v);
            if (2 * static_cast<int>(component(u, cut).size()) > n) {
                big = u;
                break;
            }
        }
        if (big < 0) return v;
        v = big;
    }
}

void Balancer::adjust(int local_root, std::vector<int> banned, int target) {
    std::vector<int> comp = component(local_root, banned);
    const int n = static_cast<int>(comp.size());
    int cur = chi(local_root, banned);
    if (cur == target) return;
    if (n == 1) {
        // cur == -1; each attached leaf raises chi by one
        for (int i = cur; i < target; ++i) attach(local_root);
        return;
    }

    const int v = half_vertex(comp, banned);
    std::vector<int> cut = banned;
    cut.push_back(v);

    struct Branch {
        int rep;  // the neighbor of v opening the branch (stable vertex id)
        int chi;
        int mag;
        std::vector<int> code;
    };
    std::vector<Branch> branches;
    long long total = 0;
    for (int u : t_.adj[v]) {
        if (is_banned(banned, u)) continue;
        Branch b;
        b.rep = u;
        b.chi = chi(u, cut);
        b.mag = std::abs(b.chi);
        b.code = branch_code(u, cut);
        total += b.mag;
        branches.push_back(std::move(b));
    }
    std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) {
        if (a.mag != b.mag) return a.mag > b.mag;
        return a.code > b.code;
    });

    if (std::llabs(target) > total) {
        // only possible at the parity extreme, where target == -cur
        assert(target == -cur);
        sign_fix(local_root, banned);
        return;
    }

    std::vector<int> mags(branches.size());
    for (std::size_t i = 0; i < branches.size(); ++i) mags[i] = branches[i].mag;
    std::vector<int> eps = sign_walk(mags, target);
    long long cprime = 0;
    for (std::size_t i = 1; i < branches.size(); ++i)
        cprime += static_cast<long long>(eps[i - 1]) * branches[i].mag;

    adjust(branches[0].rep, cut, target - static_cast<int>(cprime));

    // Separating insertion at v: the adjusted first branch and every branch
    // whose signed contribution should count positively move to the new
    // vertex; measured from v, chi then equals the target exactly.
    std::vector<char> plus_rep(t_.size(), 0);
    plus_rep[branches[0].rep] = 1;
    for (std::size_t i = 1; i < branches.size(); ++i) {
        int delta = branches[i].chi >= 0 ? 1 : -1;
        if (eps[i - 1] * delta == 1) plus_rep[branches[i].rep] = 1;
    }
    std::vector<int> moved;
    for (int u : t_.adj[v]) {
        if (is_banned(banned, u)) continue;
        // u belongs to the branch of exactly one original representative
        std::vector<int> side = component(u, cut);
        bool plus = false;
        for (int x : side)
            if (x < static_cast<int>(plus_rep.size()) && plus_rep[x]) plus = true;
        if (plus) moved.push_back(u);
    }
    t_.split_vertex(v, moved);
    record();

    int now = chi(local_root, banned);
    if (now != target) {
        assert(now == -target);
        sign_fix(local_root, banned);
    }
}

}  // namespace

int balance_chi_in_place(MutableTree& t, int c,
                         std::vector<RootedTree>* snapshots) {
    Balancer b(t, snapshots);
    b.adjust(t.root, {}, c);
    return b.insertions();
}

std::vector<RootedTree> balance_chi(const RootedTree& t0, int c) {
    if (std::abs(c) > std::abs(parity_counts(t0).chi))
        throw contract_error("balance_chi: |c| exceeds |chi(t0)|");
    MutableTree m = MutableTree::from(t0);
    std::vector<RootedTree> seq;
    balance_chi_in_place(m, c, &seq);
    return seq;
}

}  // namespace leafrate
