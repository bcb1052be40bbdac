#include <doctest.h>

#include "leafrate/coefficient_table.hpp"
#include "leafrate/errors.hpp"
#include "leafrate/series_eval.hpp"

using namespace leafrate;

namespace {

Real tol10(int digits) { return pow(Real(10), -digits); }

const CoefficientTable& shared_table() {
    static CoefficientTable table = CoefficientTable::build(220);
    return table;
}

}  // namespace

TEST_CASE("auto order covers the requested digits") {
    CHECK(auto_order(30) >= 140);
    CHECK(auto_order(10) < auto_order(40));
    PrecisionContext ctx;
    ctx.digits = 30;
    CHECK(ctx.effective_order() == auto_order(30));
    ctx.order = 99;
    CHECK(ctx.effective_order() == 99);
}

TEST_CASE("t_value matches a direct exact sum") {
    ScopedPrecision sp(60);
    const CoefficientTable& table = shared_table();
    ZSeries series(table, Real(1), tol10(40));
    // independent route: Horner in x over the exact counts
    Real x = Real(1) / 5;
    Real direct = 0;
    for (int n = 220; n >= 1; --n)
        direct = (direct + Real(table.row(n).sum())) * x;
    Real tail = 0;
    Real value = series.t_value(x, &tail);
    CHECK(abs(value - direct) < tol10(38));
    CHECK(tail < tol10(38));
    CHECK(tail >= 0);
}

TEST_CASE("functional equation holds off the boundary") {
    // T/x = z - 1 + exp(T + h) at points inside the domain
    ScopedPrecision sp(60);
    const CoefficientTable& table = shared_table();
    struct Point {
        double x, z;
    };
    for (Point p : {Point{0.2, 1.0}, Point{0.18, 1.4}, Point{0.2, 0.7},
                    Point{0.1, 2.0}}) {
        ZSeries series(table, Real(p.z), tol10(40));
        Real x(p.x);
        Real t = series.t_value(x);
        Real h = series.h_value(x);
        Real residual = Real(p.z) - 1 + exp(t + h) - t / x;
        CHECK(abs(residual) < tol10(35));
    }
}

TEST_CASE("partials match finite differences") {
    ScopedPrecision sp(60);
    const CoefficientTable& table = shared_table();
    Real z("1.2"), x("0.18"), d = tol10(10);
    ZSeries series(table, z, tol10(30));
    ZSeries up(table, z + d, tol10(30));
    ZSeries down(table, z - d, tol10(30));

    TPartials tp = series.t_partials(x);
    CHECK(abs(tp.t - series.t_value(x)) < tol10(28));
    Real fd_tx = (series.t_value(x + d) - series.t_value(x - d)) / (2 * d);
    CHECK(abs(tp.tx - fd_tx) < tol10(16));
    Real fd_tz = (up.t_value(x) - down.t_value(x)) / (2 * d);
    CHECK(abs(tp.tz - fd_tz) < tol10(16));
    Real fd_txx =
        (series.t_value(x + d) - 2 * tp.t + series.t_value(x - d)) / (d * d);
    CHECK(abs(tp.txx - fd_txx) < tol10(7));
    Real fd_txz = (up.t_value(x + d) - up.t_value(x - d) - down.t_value(x + d) +
                   down.t_value(x - d)) /
                  (4 * d * d);
    CHECK(abs(tp.txz - fd_txz) < tol10(7));
    Real fd_tzz = (up.t_value(x) - 2 * tp.t + down.t_value(x)) / (d * d);
    CHECK(abs(tp.tzz - fd_tzz) < tol10(7));

    HPartials hp = series.h_partials(x);
    CHECK(abs(hp.h - series.h_value(x)) < tol10(28));
    Real fd_hx = (series.h_value(x + d) - series.h_value(x - d)) / (2 * d);
    CHECK(abs(hp.hx - fd_hx) < tol10(16));
    Real fd_hz = (up.h_value(x) - down.h_value(x)) / (2 * d);
    CHECK(abs(hp.hz - fd_hz) < tol10(16));
    Real fd_hxx =
        (series.h_value(x + d) - 2 * hp.h + series.h_value(x - d)) / (d * d);
    CHECK(abs(hp.hxx - fd_hxx) < tol10(7));
    Real fd_hxz = (up.h_value(x + d) - up.h_value(x - d) - down.h_value(x + d) +
                   down.h_value(x - d)) /
                  (4 * d * d);
    CHECK(abs(hp.hxz - fd_hxz) < tol10(7));
    Real fd_hzz = (up.h_value(x) - 2 * hp.h + down.h_value(x)) / (d * d);
    CHECK(abs(hp.hzz - fd_hzz) < tol10(7));
}

TEST_CASE("h agrees with the definition as a k-sum of T") {
    ScopedPrecision sp(60);
    const CoefficientTable& table = shared_table();
    Real x("0.3"), z("1.3");
    ZSeries series(table, z, tol10(40));
    Real h = series.h_value(x);
    // independent route: evaluate T(x^k, z^k) with a fresh series per k
    Real direct = 0;
    Real xk = x, zk = z;
    for (int k = 2; k <= 100; ++k) {  // (xz)^100 ~ 1e-41, below tolerance
        xk *= x;
        zk *= z;
        ZSeries inner(table, zk, tol10(40));
        direct += inner.t_value(xk) / k;
    }
    CHECK(abs(h - direct) < tol10(35));
}

TEST_CASE("unit series agrees with the bivariate series at z = 1") {
    ScopedPrecision sp(60);
    const CoefficientTable& table = shared_table();
    DerivativeSeries ds = DerivativeSeries::build(220);
    ZSeries series(table, Real(1), tol10(40));
    UnitSeries unit(ds, tol10(40));
    for (double xv : {0.2, 0.3, 0.338}) {
        Real x(xv);
        HPartials a = series.h_partials(x);
        HPartials b = unit.h_partials(x);
        CHECK(abs(a.h - b.h) < tol10(36));
        CHECK(abs(a.hx - b.hx) < tol10(36));
        CHECK(abs(a.hz - b.hz) < tol10(36));
        CHECK(abs(a.hxx - b.hxx) < tol10(34));
        CHECK(abs(a.hxz - b.hxz) < tol10(34));
        CHECK(abs(a.hzz - b.hzz) < tol10(34));
    }
}

TEST_CASE("tight tolerance on a short table is refused") {
    ScopedPrecision sp(60);
    CoefficientTable table = CoefficientTable::build(20);
    ZSeries series(table, Real(1), tol10(40));
    try {
        series.t_value(Real("0.3"));
        FAIL("expected insufficient_order_error");
    } catch (const insufficient_order_error& e) {
        CHECK(e.required_order > 20);
    }
}

TEST_CASE("partial sums at the radius approach the fixed point from below") {
    // T(x, 1) -> 1 as x -> alpha; at x = alpha the terms decay only
    // polynomially, so check the partial sum instead of the evaluator
    ScopedPrecision sp(60);
    const CoefficientTable& table = shared_table();
    Real alpha("0.33832185689920769519611262571701705318");
    Real sum = 0, xp = 1;
    for (int n = 1; n <= 200; ++n) {
        xp *= alpha;
        sum += Real(table.row(n).sum()) * xp;
    }
    CHECK(sum > Real("0.9"));
    CHECK(sum < 1);
}

TEST_CASE("scoped precision restores the previous default") {
    unsigned before = Real::default_precision();
    {
        ScopedPrecision sp(77);
        CHECK(Real::default_precision() == 77);
    }
    CHECK(Real::default_precision() == before);
}
