#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace leafrate {

using BigInt = boost::multiprecision::mpz_int;

// Coefficients of a_n(z): the number of rooted unlabelled trees with n
// vertices and k leaves, for k = 1..n.
class LeafPolynomial {
public:
    LeafPolynomial() = default;
    LeafPolynomial(int n, std::vector<BigInt> coeff)
        : n_(n), coeff_(std::move(coeff)) {}

    int n() const { return n_; }
    // a_{n,k}; zero outside 1..n
    const BigInt& coeff(int k) const;
    BigInt sum() const;            // a_n(1)
    BigInt weighted_sum() const;   // sum k * a_{n,k}
    BigInt upper_half_sum() const; // sum over k > n/2
    // sum over k >= k_min
    BigInt tail_sum(int k_min) const;

private:
    int n_ = 0;
    std::vector<BigInt> coeff_;  // index k, 0..n
};

// Exact table of the a_{n,k} for n = 1..order.
class CoefficientTable {
public:
    // Builds by the coefficient recurrence; the inner convolution runs on
    // OpenMP threads.
    static CoefficientTable build(int order, int threads = 0);
    // Serial reference implementation, kept for testing and benchmarks.
    static CoefficientTable build_serial(int order);

    int order() const { return static_cast<int>(rows_.size()); }
    const LeafPolynomial& row(int n) const;
    const BigInt& a(int n, int k) const { return row(n).coeff(k); }

    // Text cache: header "leafcount-table v1 N=<order>", then one line
    // "n k value" per nonzero coefficient.  Bit-exact round-trip.
    void save(std::ostream& os) const;
    void save_file(const std::string& path) const;
    static CoefficientTable load(std::istream& is);
    static CoefficientTable load_file(const std::string& path);

    static CoefficientTable from_rows(std::vector<LeafPolynomial> rows);

private:
    std::vector<LeafPolynomial> rows_;  // rows_[n-1]
};

// T_n = a_n(1) for n = 1..order.
std::vector<BigInt> specialize_counts(const CoefficientTable& table);

// Exact values a_n(1), a_n'(1), a_n''(1) by the single-summation
// recurrences; independent of the bivariate table.
struct DerivativeSeries {
    int order = 0;
    std::vector<BigInt> value;   // a_n(1), index n-1
    std::vector<BigInt> first;   // a_n'(1)
    std::vector<BigInt> second;  // a_n''(1)

    static DerivativeSeries build(int order);
};

}  // namespace leafrate
