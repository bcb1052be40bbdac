// Acceptance gate: one criterion per invocation (argv[1] in 1..10), one
// PASS/FAIL line per criterion on stdout, nonzero exit on FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "leafrate/analytics.hpp"
#include "leafrate/arnold.hpp"
#include "leafrate/coefficient_table.hpp"
#include "leafrate/enumerate.hpp"
#include "leafrate/errors.hpp"
#include "leafrate/rooted_tree.hpp"
#include "leafrate/series_eval.hpp"
#include "leafrate/surgery.hpp"

using namespace leafrate;

namespace {

// pinned reference digit strings
const char* kAlpha = "0.33832185689920769519611262571701705318";
const char* kZ0 = "1.48491739577413809587489";
const char* kX0 = "0.3425384821514313844959919944869";
const char* kC1 = "2.919380017448416911265032583985";
const char* kM = "0.4381562356643746639684921638628797837055";
const char* kSigma2 = "0.150044811672846981980699640444640111071";
const char* kC2 = "2.91833301345955740149786987821329181193";

constexpr int kTableOrder = 220;
const char* kCachePath = "acceptance_table.cache";

int checks_failed = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++checks_failed;
        std::cout << "    check failed: " << what << "\n";
    }
}

const CoefficientTable& shared_table() {
    static CoefficientTable table = [] {
        if (std::filesystem::exists(kCachePath)) {
            try {
                CoefficientTable t = CoefficientTable::load_file(kCachePath);
                if (t.order() >= kTableOrder) return t;
            } catch (const cache_error&) {
            }
        }
        CoefficientTable t = CoefficientTable::build(kTableOrder);
        try {
            t.save_file(kCachePath);
        } catch (const cache_error&) {
        }
        return t;
    }();
    return table;
}

Analytics make_analytics(unsigned digits) {
    PrecisionContext ctx;
    ctx.digits = digits;
    return Analytics(shared_table(), ctx);
}

// ---- criterion 1: exact small rows through the CLI -----------------------

void criterion_table_fidelity() {
#ifdef CLI_PATH
    std::string cmd = std::string(CLI_PATH) + " counts --n 7";
    FILE* pipe = popen(cmd.c_str(), "r");
    expect(pipe != nullptr, "CLI could not be launched");
    std::string output;
    if (pipe) {
        char buf[256];
        while (fgets(buf, sizeof buf, pipe)) output += buf;
        expect(pclose(pipe) == 0, "CLI exited nonzero");
    }
#else
    std::string output;
#endif
    const long long rows[7][7] = {{1},
                                  {1, 0},
                                  {1, 1, 0},
                                  {1, 2, 1, 0},
                                  {1, 4, 3, 1, 0},
                                  {1, 6, 8, 4, 1, 0},
                                  {1, 9, 18, 14, 5, 1, 0}};
    std::string expected_text;
    for (int n = 1; n <= 7; ++n)
        for (int k = 1; k <= n; ++k)
            if (rows[n - 1][k - 1])
                expected_text += std::to_string(n) + " " + std::to_string(k) +
                                 " " + std::to_string(rows[n - 1][k - 1]) +
                                 "\n";
    expect(output == expected_text, "CLI table output differs");

    CoefficientTable table = CoefficientTable::build(7);
    for (int n = 1; n <= 7; ++n)
        for (int k = 1; k <= n; ++k)
            expect(table.a(n, k) == rows[n - 1][k - 1],
                   "a(" + std::to_string(n) + "," + std::to_string(k) + ")");
}

// ---- criterion 2: full-table oracle equality to n = 13 -------------------

void criterion_oracle_equivalence() {
    CoefficientTable table = CoefficientTable::build(13);
    for (int n = 1; n <= 13; ++n) {
        std::map<int, long long> by_leaves;
        for (TreeGenerator g(n); !g.done(); g.next())
            ++by_leaves[leaf_count(g.tree())];
        for (int k = 1; k <= n; ++k) {
            long long enumerated = by_leaves.count(k) ? by_leaves[k] : 0;
            expect(table.a(n, k) == enumerated,
                   "a(" + std::to_string(n) + "," + std::to_string(k) +
                       ") vs enumeration");
        }
    }
}

// ---- criteria 3-6: constants ---------------------------------------------

void criterion_alpha() {
    Analytics an = make_analytics(34);
    ConstantValue a = an.alpha();
    expect(digits_match(a.value, kAlpha, 30), "alpha to 30 digits");
    std::cout << "    alpha = " << format_significant(a.value, 30) << "\n";
}

void criterion_theorem6() {
    Analytics an = make_analytics(30);
    CriticalPoint cp = an.find_z0();
    expect(digits_match(cp.z0.value, kZ0, 20), "z0 to 20 digits");
    expect(digits_match(cp.x0.value, kX0, 25), "x0 to 25 digits");
    expect(digits_match(cp.c1.value, kC1, 25), "C1 to 25 digits");
    std::cout << "    z0 = " << format_significant(cp.z0.value, 20) << "\n"
              << "    x0 = " << format_significant(cp.x0.value, 25) << "\n"
              << "    C1 = " << format_significant(cp.c1.value, 25) << "\n";
}

void criterion_appendix() {
    Analytics an = make_analytics(34);
    LeafStatistics st = an.leaf_statistics();
    expect(digits_match(st.mean.value, kM, 30), "m to 30 digits");
    expect(digits_match(st.variance.value, kSigma2, 30), "sigma2 to 30 digits");
    ScopedPrecision sp(80);
    // the stored residual is the disagreement between the two routes
    Real route_gap_limit = pow(Real(10), -34) * 10;
    expect(st.mean.residual <= route_gap_limit, "m routes within 10x tolerance");
    expect(st.variance.residual <= route_gap_limit,
           "sigma2 routes within 10x tolerance");
    ConstantValue c2 = an.normal_approx_constant();
    expect(digits_match(c2.value, kC2, 30), "C2 to 30 digits");
    std::cout << "    m      = " << format_significant(st.mean.value, 30)
              << "\n    sigma2 = " << format_significant(st.variance.value, 30)
              << "\n    C2     = " << format_significant(c2.value, 30) << "\n";
}

void criterion_rate() {
    Analytics an = make_analytics(24);
    ScopedPrecision sp(60);
    RateValue half = an.rate_function(Real(1) / 2);
    expect(digits_match(half.value.value, kC1, 20), "C(1/2) = C1 to 20 digits");
    RateValue zero = an.rate_function(Real(0));
    expect(zero.plateau, "C(0) takes the plateau branch");
    expect(abs(zero.value.value * Real(kAlpha) - 1) < Real("1e-20"),
           "C(0) = 1/alpha");
    Real z0(kZ0), c1(kC1);
    for (const char* ls : {"0.55", "0.6", "0.7"}) {
        RateValue rv = an.rate_function(Real(ls));
        expect(!rv.plateau, std::string("lambda=") + ls + " not plateau");
        expect(rv.z_critical > z0, std::string("z_crit(") + ls + ") > z0");
        expect(rv.value.value < c1, std::string("C(") + ls + ") < C1");
    }
}

// ---- criterion 7: lemma suite --------------------------------------------

void criterion_lemmas() {
    // half vertex, exhaustively to n = 12
    for (int n = 1; n <= 12; ++n)
        for_each_tree(n, [&](const RootedTree& t) {
            int v = find_half_vertex(t);
            for (const RootedTree& b : branches_at(t, v))
                if (2 * b.size() > n) {
                    expect(false, "oversized branch at the half vertex, n=" +
                                      std::to_string(n));
                    return;
                }
        });

    // greedy signed walk, 10^4 random instances
    std::mt19937 rng(20260826);
    for (int trial = 0; trial < 10000; ++trial) {
        int r = std::uniform_int_distribution<int>(1, 20)(rng);
        std::vector<int> c(r);
        for (int& v : c) v = std::uniform_int_distribution<int>(0, 50)(rng);
        std::sort(c.rbegin(), c.rend());
        long long total = 0;
        for (std::size_t i = 1; i < c.size(); ++i) total += c[i];
        long long target =
            std::uniform_int_distribution<long long>(-total, total)(rng);
        std::vector<int> signs = sign_walk(c, target);
        long long sum = 0;
        for (std::size_t i = 1; i < c.size(); ++i) sum += signs[i - 1] * c[i];
        if (std::llabs(sum - target) > c[0]) {
            expect(false, "sign walk overshoot in trial " +
                              std::to_string(trial));
            break;
        }
    }

    // chi balancing, exhaustively to n = 10, every valid target
    for (int n = 1; n <= 10; ++n)
        for_each_tree(n, [&](const RootedTree& t) {
            int chi = parity_counts(t).chi;
            int bound =
                3 + 3 * static_cast<int>(std::floor(std::log2(std::max(1, n))));
            for (int c = -std::abs(chi); c <= std::abs(chi); ++c) {
                std::vector<RootedTree> chain = balance_chi(t, c);
                const RootedTree& last = chain.empty() ? t : chain.back();
                bool ok = parity_counts(last).chi == c &&
                          static_cast<int>(chain.size()) <= bound;
                const RootedTree* prev = &t;
                for (const RootedTree& step : chain) {
                    ok = ok && is_edge_contraction(*prev, step);
                    prev = &step;
                }
                if (!ok) {
                    expect(false, "balance failure: tree " + t.to_text() +
                                      " target " + std::to_string(c));
                    return;
                }
            }
        });
}

// ---- criterion 8: degree counts ------------------------------------------

void criterion_arnold_counts() {
    const CoefficientTable& table = shared_table();
    expect(count_L(4, table) == 1, "L_4 = 1");
    expect(count_L(5, table) == 20, "L_5 = 20");
    expect(count_L_prime(4, table) == 5, "L'_4 = 5");
    expect(count_A(4) == 5, "A_4 = 5");
    for (int d = 3; d <= 7; ++d) {  // all d with N_d <= 16
        DegreeBudget b = vertex_budget(d);
        BigInt brute_l =
            serial_count(b.n_max, [&](const std::vector<int>& s) -> std::uint64_t {
                return leaf_count(RootedTree::from_canonical(s)) >= b.k_min;
            });
        expect(count_L(d, table) == brute_l,
               "L_" + std::to_string(d) + " vs brute force");
        BigInt brute_lp = 0;
        for (int n = 1; n <= b.n_max; ++n) {
            int k_min = n - 1 - b.half_floor * (b.half_floor - 1);
            brute_lp +=
                serial_count(n, [&](const std::vector<int>& s) -> std::uint64_t {
                    return leaf_count(RootedTree::from_canonical(s)) >= k_min;
                });
        }
        expect(count_L_prime(d, table) == brute_lp,
               "L'_" + std::to_string(d) + " vs brute force");
    }
    std::uint64_t a6 = count_A(6);
    std::cout << "    A_6 = " << a6 << "\n";
    expect(BigInt(a6) <= count_L_prime(6, table), "A_6 <= L'_6");
}

// ---- criterion 9: asymptotic trends --------------------------------------

void criterion_trends() {
    const CoefficientTable& table = shared_table();
    ScopedPrecision sp(50);
    Real x0(kX0);
    Real est = pow(Real(table.row(200).upper_half_sum()), Real(-1) / 200);
    Real gap = abs(est - x0);
    std::cout << "    (a_200^+)^(-1/200) = " << format_significant(est, 8)
              << ", |gap to x0| = " << format_significant(gap, 4)
              << " (gate: < 0.01)\n";
    expect(gap < Real("0.01"),
           "finite-size estimate within 0.01 of x0 at n = 200");

    std::vector<ArnoldReport> rows =
        rate_report({5, 6, 7, 8, 9, 10, 11, 12, 13}, table, /*a_budget=*/1);
    double limit = std::log(2.919380017448417);
    bool trend = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        trend = trend && rows[i].log2norm_l < limit + 0.1;
        // growth within each parity class; consecutive degrees wobble
        if (i >= 2) trend = trend && rows[i].log2norm_l > rows[i - 2].log2norm_l;
    }
    trend = trend && rows.back().log2norm_l > rows.front().log2norm_l;
    expect(trend, "normalized logs increase toward log C1 over d = 5..13");
}

// ---- criterion 10: numerical robustness ----------------------------------

void criterion_robustness() {
    Analytics coarse = make_analytics(15);
    Analytics fine = make_analytics(30);
    ScopedPrecision sp(70);

    ConstantValue a1 = coarse.alpha(), a2 = fine.alpha();
    expect(abs(a1.value - a2.value) < a1.error, "alpha stable under doubling");
    CriticalPoint cp1 = coarse.find_z0(), cp2 = fine.find_z0();
    expect(abs(cp1.z0.value - cp2.z0.value) < cp1.z0.error,
           "z0 stable under doubling");
    expect(abs(cp1.x0.value - cp2.x0.value) < cp1.x0.error,
           "x0 stable under doubling");
    expect(abs(cp1.c1.value - cp2.c1.value) < cp1.c1.error,
           "C1 stable under doubling");
    LeafStatistics st1 = coarse.leaf_statistics(), st2 = fine.leaf_statistics();
    expect(abs(st1.mean.value - st2.mean.value) < st1.mean.error,
           "m stable under doubling");
    expect(abs(st1.variance.value - st2.variance.value) < st1.variance.error,
           "sigma2 stable under doubling");
    ConstantValue c21 = coarse.normal_approx_constant(),
                  c22 = fine.normal_approx_constant();
    expect(abs(c21.value - c22.value) < c21.error, "C2 stable under doubling");

    // centered finite differences of r at z = 1.2, O(delta^2) convergence
    Real z("1.2");
    BoundaryPoint pt = fine.solve_r(z);
    fine.attach_derivatives(pt);
    Real prev_err = 0;
    for (int e : {3, 4, 5}) {
        Real d = pow(Real(10), -e);
        Real fd = (fine.solve_r(z + d).r - fine.solve_r(z - d).r) / (2 * d);
        Real err = abs(fd - pt.r_prime);
        std::cout << "    |fd(1e-" << e << ") - r'| = "
                  << format_significant(err, 3) << "\n";
        if (e > 3)
            expect(err < prev_err / 30,
                   "quadratic error decay at delta = 1e-" + std::to_string(e));
        prev_err = err;
    }
}

struct Criterion {
    const char* name;
    void (*run)();
    double time_limit_s;
};

const Criterion kCriteria[] = {
    {"table-fidelity", criterion_table_fidelity, 1},
    {"oracle-equivalence", criterion_oracle_equivalence, 60},
    {"otter-constant", criterion_alpha, 120},
    {"critical-point-constants", criterion_theorem6, 600},
    {"leaf-statistics", criterion_appendix, 600},
    {"rate-function", criterion_rate, 600},
    {"lemma-suite", criterion_lemmas, 120},
    {"degree-counts", criterion_arnold_counts, 300},
    {"asymptotic-trends", criterion_trends, 600},
    {"numerical-robustness", criterion_robustness, 600},
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <criterion 1..10>\n";
        return 2;
    }
    int idx = std::atoi(argv[1]);
    if (idx < 1 || idx > 10) {
        std::cerr << "criterion must be 1..10\n";
        return 2;
    }
    const Criterion& crit = kCriteria[idx - 1];
    auto t0 = std::chrono::steady_clock::now();
    try {
        crit.run();
    } catch (const std::exception& e) {
        ++checks_failed;
        std::cout << "    exception: " << e.what() << "\n";
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool in_time = elapsed < crit.time_limit_s;
    if (!in_time)
        std::cout << "    time limit exceeded: " << elapsed << " s > "
                  << crit.time_limit_s << " s\n";
    bool pass = checks_failed == 0 && in_time;
    std::cout << "acceptance " << idx << " (" << crit.name
              << "): " << (pass ? "PASS" : "FAIL") << "  [" << elapsed
              << " s]\n";
    return pass ? 0 : 1;
}
