#include "leafrate/arnold.hpp"

#include <cmath>
#include <sstream>

#include "leafrate/enumerate.hpp"
#include "leafrate/errors.hpp"

namespace leafrate {

namespace {

// (even*, odd*) straight off a level sequence: non-leaf vertices at odd /
// even nonzero distance from the root.
std::pair<int, int> star_counts(const std::vector<int>& levels) {
    int even_star = 0, odd_star = 0;
    int n = static_cast<int>(levels.size());
    for (int v = 0; v < n; ++v) {
        bool leaf = (v + 1 == n) || (levels[v + 1] <= levels[v]);
        if (leaf || levels[v] == 0) continue;
        if (levels[v] % 2 == 1)
            ++even_star;
        else
            ++odd_star;
    }
    return {even_star, odd_star};
}

void require_order(const CoefficientTable& table, int needed) {
    if (table.order() < needed)
        throw insufficient_order_error(
            "coefficient table of order " + std::to_string(table.order()) +
                " too small; need " + std::to_string(needed),
            static_cast<unsigned>(needed));
}

std::uint64_t count_A_impl(int d, std::uint64_t budget, int threads,
                           bool parallel) {
    if (d < 4 || d % 2 != 0)
        throw contract_error("count_A requires even degree >= 4");
    DegreeBudget b = vertex_budget(d);
    int k = b.half;
    long long bound = static_cast<long long>(k - 1) * (k - 2) / 2;
    // exact per-size tree counts for deterministic budget accounting
    DerivativeSeries sizes = DerivativeSeries::build(b.n_max);
    std::uint64_t processed = 0, total = 0;
    for (int n = 1; n <= b.n_max; ++n) {
        const BigInt& trees_n = sizes.value[n - 1];
        if (BigInt(processed) + trees_n > budget)
            throw budget_error("enumeration budget exhausted before size " +
                                   std::to_string(n),
                               processed);
        auto weight = [bound](const std::vector<int>& levels) -> std::uint64_t {
            auto [even_star, odd_star] = star_counts(levels);
            return even_star <= bound && odd_star <= bound ? 1 : 0;
        };
        total += parallel ? parallel_count(n, weight, threads)
                          : serial_count(n, weight);
        processed += trees_n.convert_to<std::uint64_t>();
    }
    return total;
}

}  // namespace

DegreeBudget vertex_budget(int d) {
    if (d < 3) throw contract_error("vertex_budget requires degree >= 3");
    DegreeBudget b;
    b.d = d;
    b.n_max = (d - 1) * (d - 2) / 2 + (d % 2 == 1 ? 1 : 2);
    b.half_floor = (d - 1) / 2;
    b.half = d / 2;
    b.k_min = b.n_max - 1 - b.half_floor * (b.half_floor - 1);
    return b;
}

BigInt count_L(int d, const CoefficientTable& table) {
    DegreeBudget b = vertex_budget(d);
    require_order(table, b.n_max);
    return table.row(b.n_max).tail_sum(b.k_min);
}

BigInt count_L_prime(int d, const CoefficientTable& table) {
    DegreeBudget b = vertex_budget(d);
    require_order(table, b.n_max);
    BigInt total = 0;
    for (int n = 1; n <= b.n_max; ++n) {
        int k_min = n - 1 - b.half_floor * (b.half_floor - 1);
        total += table.row(n).tail_sum(k_min);
    }
    return total;
}

std::uint64_t count_A(int d, std::uint64_t budget, int threads) {
    return count_A_impl(d, budget, threads, true);
}

std::uint64_t count_A_serial(int d, std::uint64_t budget) {
    return count_A_impl(d, budget, 0, false);
}

std::vector<ArnoldReport> rate_report(const std::vector<int>& degrees,
                                      const CoefficientTable& table,
                                      std::uint64_t a_budget, int threads) {
    std::vector<ArnoldReport> rows;
    rows.reserve(degrees.size());
    for (int d : degrees) {
        ArnoldReport row;
        row.d = d;
        row.l = count_L(d, table);
        row.l_prime = count_L_prime(d, table);
        double dd = static_cast<double>(d) * d;
        if (row.l > 0)
            row.log2norm_l = 2 * std::log(row.l.convert_to<double>()) / dd;
        if (row.l_prime > 0)
            row.log2norm_l_prime =
                2 * std::log(row.l_prime.convert_to<double>()) / dd;
        if (d % 2 == 0) {
            try {
                row.a = count_A(d, a_budget, threads);
                row.has_a = true;
                if (row.a > 0)
                    row.log2norm_a =
                        2 * std::log(static_cast<double>(row.a)) / dd;
            } catch (const budget_error&) {
                // A_d left absent; the CSV cell stays empty
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string report_csv(const std::vector<ArnoldReport>& rows) {
    std::ostringstream os;
    os << "d,N_d,K_d,L_d,Lprime_d,A_d,log2norm_L,log2norm_Lprime,log2norm_A\n";
    os.precision(6);
    os << std::fixed;
    for (const ArnoldReport& row : rows) {
        DegreeBudget b = vertex_budget(row.d);
        os << row.d << ',' << b.n_max << ',' << b.k_min << ',' << row.l << ','
           << row.l_prime << ',';
        if (row.has_a) os << row.a;
        os << ',' << row.log2norm_l << ',' << row.log2norm_l_prime << ',';
        if (row.has_a)
            os << row.log2norm_a;
        os << '\n';
    }
    return os.str();
}

}  // namespace leafrate
