#pragma once

#include <memory>
#include <string>

#include "leafrate/coefficient_table.hpp"
#include "leafrate/series_eval.hpp"

namespace leafrate {

// A computed constant with a conservative error estimate and the residual
// of its defining equation at the reported value.
struct ConstantValue {
    Real value;
    Real error;
    Real residual;
};

// Point on the boundary curve z -> (r(z), a(z)) of the convergence domain.
struct BoundaryPoint {
    Real z;
    Real r;  // r(z)
    Real a;  // a(z) = 1 + r(z)(z-1)
    Real residual;
    bool has_derivatives = false;
    Real r_prime;
    Real r_double_prime;
};

struct CriticalPoint {
    ConstantValue z0;
    ConstantValue x0;  // r(z0) * sqrt(z0)
    ConstantValue c1;  // 1 / x0
};

struct LeafStatistics {
    ConstantValue mean;      // m = -r'(1)/alpha
    ConstantValue variance;  // sigma^2
};

struct RateValue {
    ConstantValue value;  // C(lambda)
    Real z_critical;      // z_{0,lambda}; 1 when the plateau case applies
    bool plateau;         // true when C(lambda) = 1/alpha (z_{0,lambda} <= 1)
};

// Newton solvers on the boundary curve: the growth constants and the rate
// function.  All methods are pure given (table, ctx); a single instance
// caches per-z series evaluators and is not safe for concurrent use.
class Analytics {
public:
    Analytics(const CoefficientTable& table, PrecisionContext ctx);
    ~Analytics();

    const PrecisionContext& ctx() const;

    ConstantValue alpha() const;
    BoundaryPoint solve_r(const Real& z) const;
    // fills r_prime / r_double_prime
    void attach_derivatives(BoundaryPoint& pt) const;
    CriticalPoint find_z0() const;
    RateValue rate_function(const Real& lambda) const;
    // both routes (bivariate table / unit-series recurrences) must agree
    LeafStatistics leaf_statistics() const;
    ConstantValue normal_approx_constant() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Fixed-notation decimal string with the given number of significant
// digits, correctly rounded.
std::string format_significant(const Real& value, unsigned digits);

// True when value agrees with the reference decimal literal to `digits`
// significant digits, final digit off by at most one.
bool digits_match(const Real& value, const std::string& reference,
                  unsigned digits);

}  // namespace leafrate
