#include "leafrate/series_eval.hpp"

#include <algorithm>
#include <cmath>

#include "leafrate/errors.hpp"

namespace leafrate {

namespace {

// Safe lower bound on the radius of convergence of the one-variable tree
// series; drives the certified geometric tail envelope.
const double kRadiusLowerBound = 0.338;

Real pow10_neg(unsigned digits) {
    return pow(Real(10), -static_cast<int>(digits));
}

}  // namespace

unsigned auto_order(unsigned digits) {
    // per-term ratio near the worst evaluation point is about 0.55
    double n = digits * std::log(10.0) / std::log(1.0 / 0.55) + 32.0;
    return std::min<unsigned>(static_cast<unsigned>(n) + 1, 2000);
}

unsigned PrecisionContext::effective_order() const {
    return order ? order : auto_order(digits);
}

Real PrecisionContext::tolerance() const { return pow10_neg(digits + 8); }

ScopedPrecision::ScopedPrecision(unsigned decimal_digits)
    : saved_(Real::default_precision()) {
    Real::default_precision(decimal_digits);
}

ScopedPrecision::~ScopedPrecision() { Real::default_precision(saved_); }

// ---------------------------------------------------------------------------

struct ZSeries::Impl {
    const CoefficientTable& table;
    Real z;
    Real zmax1;  // max(z, 1)
    Real tol;

    struct Row {
        Real w;  // z^k
        std::vector<Real> a, b, c;  // a_n(w), a_n'(w), a_n''(w); index n-1
    };
    mutable std::vector<Row> rows;  // rows[k-1]

    Impl(const CoefficientTable& t, Real zz, Real tolerance)
        : table(t), z(std::move(zz)), tol(std::move(tolerance)) {
        zmax1 = z > 1 ? z : Real(1);
    }

    Row& row(int k) const {
        while (static_cast<int>(rows.size()) < k) {
            Row r;
            r.w = rows.empty() ? z : rows.back().w * z;
            rows.push_back(std::move(r));
        }
        return rows[k - 1];
    }

    void extend_row(Row& r, int n) const {
        while (static_cast<int>(r.a.size()) < n) {
            int m = static_cast<int>(r.a.size()) + 1;
            const LeafPolynomial& poly = table.row(m);
            Real p = 0, d1 = 0, d2 = 0;
            for (int i = m; i >= 0; --i) {
                d2 = d2 * r.w + 2 * d1;
                d1 = d1 * r.w + p;
                p = p * r.w + Real(poly.coeff(i));
            }
            r.a.push_back(p);
            r.b.push_back(d1);
            r.c.push_back(d2);
        }
    }

    struct Sums {
        Real s0{0}, s1{0}, s2{0}, s3{0}, s4{0}, s5{0};
        // s0 = sum a_n X^n, s1 = sum n a_n X^n, s2 = sum n(n-1) a_n X^n,
        // s3 = sum b_n X^n, s4 = sum n b_n X^n, s5 = sum c_n X^n
        Real tail{0};
    };

    // Sums of the k-th row at X = x^k, with the termination rule described
    // in the header.  need_partials selects whether the derivative sums
    // matter for the stopping test.
    Sums row_sums(int k, const Real& x, bool need_partials) const {
        Row& r = row(k);
        Sums s;
        Real X = pow(x, k);
        if (X == 0) return s;
        Real rho_env = pow(x * zmax1, k) / kRadiusLowerBound;
        Real xp = 1;  // X^n as we go
        Real prev_mag = 0;
        const int cap = table.order();
        for (int n = 1;; ++n) {
            if (n > cap)
                throw insufficient_order_error(
                    "series tail does not reach tolerance at table order " +
                        std::to_string(cap),
                    2u * static_cast<unsigned>(cap));
            extend_row(r, n);
            xp *= X;
            Real ta = r.a[n - 1] * xp;
            Real tb = r.b[n - 1] * xp;
            Real tc = r.c[n - 1] * xp;
            s.s0 += ta;
            s.s1 += n * ta;
            s.s2 += Real(n) * (n - 1) * ta;
            s.s3 += tb;
            s.s4 += n * tb;
            s.s5 += tc;
            Real mag = abs(ta) * n * n;
            if (need_partials) mag = (std::max)({mag, abs(tb) * n, abs(tc)});
            // ratio: certified envelope when it contracts, observed otherwise
            Real rho = rho_env;
            if (!(rho < Real(0.99))) {
                if (prev_mag > 0 && mag < prev_mag)
                    rho = mag / prev_mag;
                else
                    rho = 1;  // not contracting yet; keep summing
            }
            prev_mag = mag;
            if (n >= 2 && rho < Real(0.999) && mag < tol * (1 - rho)) {
                s.tail = mag * rho / (1 - rho);
                break;
            }
        }
        return s;
    }
};

ZSeries::ZSeries(const CoefficientTable& table, Real z, Real tolerance)
    : impl_(std::make_unique<Impl>(table, z, std::move(tolerance))), z_(z) {}

ZSeries::~ZSeries() = default;

TPartials ZSeries::t_partials(const Real& x) const {
    auto s = impl_->row_sums(1, x, true);
    TPartials tp;
    tp.t = s.s0;
    tp.tx = s.s1 / x;
    tp.tz = s.s3;
    tp.txx = s.s2 / (x * x);
    tp.txz = s.s4 / x;
    tp.tzz = s.s5;
    tp.tail = s.tail;
    return tp;
}

Real ZSeries::t_value(const Real& x, Real* tail) const {
    auto s = impl_->row_sums(1, x, false);
    if (tail) *tail = s.tail;
    return s.s0;
}

HPartials ZSeries::h_partials(const Real& x) const {
    const Real& z = impl_->z;
    HPartials hp;
    hp.h = hp.hx = hp.hz = hp.hxx = hp.hxz = hp.hzz = 0;
    hp.tail = 0;
    Real zk1 = z;  // z^{k-1}
    Real prev_contrib = 0;
    for (int k = 2;; ++k) {
        auto s = impl_->row_sums(k, x, true);
        hp.h += s.s0 / k;
        hp.hx += s.s1 / x;
        hp.hxx += ((k - 1) * s.s1 + k * s.s2) / (x * x);
        hp.hz += zk1 * s.s3;
        hp.hxz += k * zk1 * s.s4 / x;
        hp.hzz += (k - 1) * (zk1 / z) * s.s3 + k * zk1 * zk1 * s.s5;
        hp.tail += s.tail;
        Real contrib =
            (std::max)({abs(s.s0), abs(s.s1), abs(s.s2), abs(zk1 * s.s3),
                        abs(Real(k) * zk1 * s.s4), abs(Real(k) * zk1 * zk1 * s.s5)});
        if (k > 2 && contrib < impl_->tol) {
            Real q = prev_contrib > 0 ? contrib / prev_contrib : Real(0.5);
            if (q > Real(0.9)) q = Real(0.9);
            hp.tail += contrib * q / (1 - q);
            break;
        }
        prev_contrib = contrib;
        zk1 *= z;
        if (k > 100000)
            throw convergence_error("h series k-sum failed to terminate", 0.0);
    }
    return hp;
}

Real ZSeries::h_value(const Real& x, Real* tail) const {
    Real total = 0, tail_acc = 0;
    Real prev = 0;
    for (int k = 2;; ++k) {
        auto s = impl_->row_sums(k, x, false);
        total += s.s0 / k;
        tail_acc += s.tail;
        Real contrib = abs(s.s0);
        if (k > 2 && contrib < impl_->tol) {
            Real q = prev > 0 ? contrib / prev : Real(0.5);
            if (q > Real(0.9)) q = Real(0.9);
            tail_acc += contrib * q / (1 - q);
            break;
        }
        prev = contrib;
        if (k > 100000)
            throw convergence_error("h series k-sum failed to terminate", 0.0);
    }
    if (tail) *tail = tail_acc;
    return total;
}

// ---------------------------------------------------------------------------

UnitSeries::UnitSeries(const DerivativeSeries& series, Real tolerance)
    : series_(series), tol_(std::move(tolerance)) {}

HPartials UnitSeries::h_partials(const Real& x) const {
    HPartials hp;
    hp.h = hp.hx = hp.hz = hp.hxx = hp.hxz = hp.hzz = 0;
    hp.tail = 0;
    const int cap = series_.order;
    Real prev_contrib = 0;
    for (int k = 2;; ++k) {
        Real X = pow(x, k);
        Real rho = pow(x, k) / kRadiusLowerBound;
        Real s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0;
        Real xp = 1, tail = 0;
        for (int n = 1;; ++n) {
            if (n > cap)
                throw insufficient_order_error(
                    "derivative series too short for requested tolerance",
                    2u * cap);
            xp *= X;
            Real ta = Real(series_.value[n - 1]) * xp;
            Real tb = Real(series_.first[n - 1]) * xp;
            Real tc = Real(series_.second[n - 1]) * xp;
            s0 += ta;
            s1 += n * ta;
            s2 += Real(n) * (n - 1) * ta;
            s3 += tb;
            s4 += n * tb;
            s5 += tc;
            Real mag = (std::max)({abs(ta) * n * n, abs(tb) * n, abs(tc)});
            if (n >= 2 && rho < Real(0.999) && mag < tol_ * (1 - rho)) {
                tail = mag * rho / (1 - rho);
                break;
            }
        }
        hp.h += s0 / k;
        hp.hx += s1 / x;
        hp.hxx += ((k - 1) * s1 + k * s2) / (x * x);
        hp.hz += s3;
        hp.hxz += k * s4 / x;
        hp.hzz += (k - 1) * s3 + k * s5;
        hp.tail += tail;
        Real contrib = (std::max)({abs(s0), abs(s1), abs(s2), abs(s3),
                                   abs(Real(k) * s4), abs(Real(k) * s5)});
        if (k > 2 && contrib < tol_) {
            Real q = prev_contrib > 0 ? contrib / prev_contrib : Real(0.5);
            if (q > Real(0.9)) q = Real(0.9);
            hp.tail += contrib * q / (1 - q);
            break;
        }
        prev_contrib = contrib;
        if (k > 100000)
            throw convergence_error("h series k-sum failed to terminate", 0.0);
    }
    return hp;
}

}  // namespace leafrate
