#pragma once

#include <memory>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "leafrate/coefficient_table.hpp"

namespace leafrate {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

// Numeric contract for every analytic computation: requested output
// digits, series truncation order, Newton limits.  Internally everything
// runs at twice the requested digits.
struct PrecisionContext {
    unsigned digits = 30;
    unsigned order = 0;  // 0: derive from digits
    unsigned max_newton_iters = 80;

    unsigned working_digits() const { return 2 * digits + 10; }
    unsigned effective_order() const;
    // absolute tolerance for Newton steps and series tails
    Real tolerance() const;
};

// Truncation order giving a certified tail below 10^-digits at the worst
// evaluation points, where the per-term ratio is about 0.55.
unsigned auto_order(unsigned digits);

// Sets the mpfr default precision for the current scope.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned decimal_digits);
    ~ScopedPrecision();
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

struct TPartials {
    Real t, tx, tz, txx, txz, tzz;
    Real tail;  // bound on the truncation error of t
};

struct HPartials {
    Real h, hx, hz, hxx, hxz, hzz;
    Real tail;
};

// Evaluator of the bivariate series and of the auxiliary sum
// h(x,z) = sum_{k>=2} T(x^k, z^k)/k at a fixed z, caching the row values
// a_n(z^k) and their z-derivatives per k.  Evaluation points must lie
// strictly inside the convergence domain; tails are bounded by the
// geometric envelope ratio x*max(z,1)/alpha where it certifies, and by the
// observed term ratio otherwise (heuristic, per the numeric contract).
// Not safe for concurrent use of one instance.
class ZSeries {
public:
    ZSeries(const CoefficientTable& table, Real z, Real tolerance);
    ~ZSeries();

    const Real& z() const { return z_; }

    // the k = 1 term: T and partial derivatives at (x, z)
    TPartials t_partials(const Real& x) const;
    Real t_value(const Real& x, Real* tail = nullptr) const;

    // the k >= 2 sum and its partials
    HPartials h_partials(const Real& x) const;
    Real h_value(const Real& x, Real* tail = nullptr) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Real z_;
};

// The z = 1 specialization driven by the single-summation series
// a_n(1), a_n'(1), a_n''(1); the independent fast route for the boundary
// derivatives at z = 1.
class UnitSeries {
public:
    UnitSeries(const DerivativeSeries& series, Real tolerance);

    HPartials h_partials(const Real& x) const;

private:
    const DerivativeSeries& series_;
    Real tol_;
};

}  // namespace leafrate
