#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leafrate/coefficient_table.hpp"

namespace leafrate {

// Vertex and leaf budgets for plane curves of degree d.
struct DegreeBudget {
    int d = 0;
    int n_max = 0;       // N_d
    int k_min = 0;       // K_d
    int half_floor = 0;  // floor((d-1)/2)
    int half = 0;        // floor(d/2)
};

// Throws contract_error for d < 3.
DegreeBudget vertex_budget(int d);

struct ArnoldReport {
    int d = 0;
    BigInt l;
    BigInt l_prime;
    bool has_a = false;
    std::uint64_t a = 0;
    double log2norm_l = 0;       // 2 ln(L_d) / d^2
    double log2norm_l_prime = 0;
    double log2norm_a = 0;
};

// Number of rooted trees with exactly N_d vertices and at least K_d
// leaves, read off the coefficient table.
BigInt count_L(int d, const CoefficientTable& table);

// Number of rooted trees with n <= N_d vertices and at least
// n - 1 - half_floor (half_floor - 1) leaves.
BigInt count_L_prime(int d, const CoefficientTable& table);

// Exhaustive count of rooted trees with n <= N_d vertices whose star
// counts both satisfy the degree-d bound (k-1)(k-2)/2, k = d/2.  Requires
// even d.  Throws budget_error before starting any size whose cumulative
// tree count would exceed the budget.
std::uint64_t count_A(int d, std::uint64_t budget = UINT64_MAX,
                      int threads = 0);
// Serial reference implementation.
std::uint64_t count_A_serial(int d, std::uint64_t budget = UINT64_MAX);

// Counts per degree plus normalized logs.  A_d is filled for even d whose
// cumulative enumeration fits the budget.
std::vector<ArnoldReport> rate_report(const std::vector<int>& degrees,
                                      const CoefficientTable& table,
                                      std::uint64_t a_budget = 50'000'000,
                                      int threads = 0);

// Header "d,N_d,K_d,L_d,Lprime_d,A_d,log2norm_L,log2norm_Lprime,log2norm_A";
// empty A cells when not computed.
std::string report_csv(const std::vector<ArnoldReport>& rows);

}  // namespace leafrate
