#include "leafrate/enumerate.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "leafrate/errors.hpp"

namespace leafrate {
namespace {

// In-place successor in decreasing lexicographic order.  Returns the index
// of the first modified position, or -1 when the stream is exhausted.
int successor(std::vector<int>& s) {
    const int n = static_cast<int>(s.size());
    int p = n - 1;
    while (p >= 0 && s[p] < 2) --p;
    if (p < 0) return -1;
    int q = p - 1;
    while (s[q] != s[p] - 1) --q;
    for (int i = p; i < n; ++i) s[i] = s[i - (p - q)];
    return p;
}

}  // namespace

TreeGenerator::TreeGenerator(int n) {
    if (n < 1) {
        done_ = true;
        return;
    }
    seq_.resize(n);
    std::iota(seq_.begin(), seq_.end(), 0);
}

TreeGenerator::TreeGenerator(int n, const std::vector<int>& prefix)
    : prefix_len_(static_cast<int>(prefix.size())) {
    if (n < 1 || prefix_len_ > n) {
        done_ = true;
        return;
    }
    seq_ = max_canonical_completion(prefix, n);
}

bool TreeGenerator::next() {
    if (done_) return false;
    int p = successor(seq_);
    if (p < 0 || p < prefix_len_) {
        done_ = true;
        return false;
    }
    return true;
}

std::vector<int> max_canonical_completion(std::vector<int> prefix, int n) {
    if (!is_canonical_level_sequence(prefix))
        throw contract_error("prefix is not canonical");
    prefix.reserve(n);
    while (static_cast<int>(prefix.size()) < n) {
        for (int v = prefix.back() + 1; v >= 1; --v) {
            prefix.push_back(v);
            if (is_canonical_level_sequence(prefix)) break;
            prefix.pop_back();
        }
    }
    return prefix;
}

std::vector<std::vector<int>> enumeration_prefixes(int n, int prefix_len) {
    std::vector<std::vector<int>> out;
    if (prefix_len >= n) {
        for_each_level_sequence(n,
                                [&](const std::vector<int>& s) { out.push_back(s); });
        return out;
    }
    for_each_level_sequence(
        prefix_len, [&](const std::vector<int>& s) { out.push_back(s); });
    return out;
}

std::uint64_t serial_count(
    int n,
    const std::function<std::uint64_t(const std::vector<int>&)>& weight) {
    std::uint64_t total = 0;
    for_each_level_sequence(n,
                            [&](const std::vector<int>& s) { total += weight(s); });
    return total;
}

std::uint64_t parallel_count(
    int n, const std::function<std::uint64_t(const std::vector<int>&)>& weight,
    int threads) {
    if (n < 1) return 0;
    // Short prefixes give too few blocks for load balance, long ones too
    // many tiny ones: length 8 yields 115 blocks.
    const int prefix_len = std::min(n, 8);
    auto prefixes = enumeration_prefixes(n, prefix_len);
    std::uint64_t total = 0;
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
#endif
    for (std::size_t b = 0; b < prefixes.size(); ++b) {
        std::uint64_t local = 0;
        if (prefix_len >= n) {
            local = weight(prefixes[b]);
        } else {
            for (TreeGenerator g(n, prefixes[b]); !g.done(); g.next())
                local += weight(g.levels());
        }
        total += local;
    }
    return total;
}

std::uint64_t count_trees(int n) {
    return serial_count(n, [](const std::vector<int>&) { return 1u; });
}

}  // namespace leafrate
