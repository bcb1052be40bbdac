#include "leafrate/analytics.hpp"

#include <map>
#include <utility>

#include <mpfr.h>

#include "leafrate/errors.hpp"

namespace leafrate {

namespace {

Real pow10_int(long e) { return pow(Real(10), e); }

}  // namespace

struct Analytics::Impl {
    const CoefficientTable& table;
    PrecisionContext ctx;
    mutable std::map<Real, std::unique_ptr<ZSeries>> zcache;
    mutable DerivativeSeries dseries;  // built on first use

    Impl(const CoefficientTable& t, PrecisionContext c)
        : table(t), ctx(std::move(c)) {}

    Real tail_tol() const { return pow10_int(-long(ctx.digits) - 4); }
    Real newton_tol() const { return pow10_int(-long(ctx.digits) - 4); }
    // conservative estimate reported on every constant
    Real error_scale() const { return pow10_int(-long(ctx.digits) - 2); }

    ZSeries& series(const Real& z) const {
        auto it = zcache.find(z);
        if (it == zcache.end())
            it = zcache
                     .emplace(z, std::make_unique<ZSeries>(table, z, tail_tol()))
                     .first;
        return *it->second;
    }

    const DerivativeSeries& derivative_series() const {
        if (dseries.order == 0)
            dseries = DerivativeSeries::build(table.order());
        return dseries;
    }

    // Newton on g(x) = log x + 1 + (z-1)x + h(x,z); the solution is r(z).
    BoundaryPoint solve_r(const Real& z, Real x_init = 0) const {
        const ZSeries& S = series(z);
        Real hi = z > 1 ? 1 / z : Real(1);  // r(z) < min(1, 1/z)
        Real x = x_init;
        if (!(x > 0 && x < hi)) {
            x = Real("0.3383") / (z > 1 ? z : Real(1));
            if (!(x < hi)) x = hi / 2;
        }
        Real tol = newton_tol();
        Real g = 0;
        for (unsigned iter = 0;; ++iter) {
            if (iter >= ctx.max_newton_iters)
                throw convergence_error("Newton for r(z) did not converge",
                                        abs(g).convert_to<double>());
            HPartials hp = S.h_partials(x);
            g = log(x) + 1 + (z - 1) * x + hp.h;
            Real gp = 1 / x + (z - 1) + hp.hx;
            Real dx = -g / gp;
            Real xn = x + dx;
            bool damped = false;
            if (!(xn > 0)) {
                xn = x / 2;
                damped = true;
            } else if (!(xn < hi)) {
                xn = (x + hi) / 2;
                damped = true;
            }
            Real step = abs(xn - x);
            x = xn;
            if (!damped && step < tol * (abs(x) + 1)) break;
        }
        BoundaryPoint pt;
        pt.z = z;
        pt.r = x;
        pt.a = 1 + x * (z - 1);
        pt.residual = abs(log(x) + 1 + (z - 1) * x + S.h_partials(x).h);
        return pt;
    }

    void attach_derivatives(BoundaryPoint& pt) const {
        const ZSeries& S = series(pt.z);
        HPartials hp = S.h_partials(pt.r);
        const Real& r = pt.r;
        const Real& a = pt.a;
        Real r2 = r * r;
        Real fx = hp.hx / r + a / r2;
        if (abs(fx) < newton_tol())
            throw convergence_error("degenerate boundary point: F_x vanishes",
                                    abs(fx).convert_to<double>());
        Real fz = 1 + hp.hz / r;
        Real rp = -fz / fx;
        Real ap = (pt.z - 1) * rp + r;
        Real fxx = (hp.hxx + hp.hx * hp.hx) / r - 2 * a / (r2 * r);
        Real fxy = hp.hx / r + 1 / r2;
        Real fxz = (hp.hxz + hp.hx * hp.hz) / r;
        Real fyz = hp.hz / r;
        Real fzz = (hp.hzz + hp.hz * hp.hz) / r;
        Real rpp =
            -(fxx * rp * rp + fxy * rp * ap + 2 * fxz * rp + fyz * ap + fzz) /
            fx;
        pt.r_prime = rp;
        pt.r_double_prime = rpp;
        pt.has_derivatives = true;
    }

    // Newton in z on phi(z) = r'(z) + weight * r(z)/z; the critical-point
    // equation of r(z) z^weight.  Returns the solved point.
    BoundaryPoint solve_critical(const Real& weight, Real z_init) const {
        Real z = z_init;
        Real tol = newton_tol();
        Real x_guess = 0;
        Real phi = 0;
        for (unsigned iter = 0;; ++iter) {
            if (iter >= ctx.max_newton_iters)
                throw convergence_error(
                    "Newton for the critical point did not converge",
                    abs(phi).convert_to<double>());
            BoundaryPoint pt = solve_r(z, x_guess);
            attach_derivatives(pt);
            x_guess = pt.r;
            phi = pt.r_prime + weight * pt.r / z;
            Real dphi = pt.r_double_prime +
                        weight * (pt.r_prime / z - pt.r / (z * z));
            Real dz = -phi / dphi;
            if (abs(dz) > Real("0.5")) dz = dz > 0 ? Real("0.5") : Real("-0.5");
            Real zn = z + dz;
            if (!(zn > 1)) zn = (z + 1) / 2;
            Real step = abs(zn - z);
            z = zn;
            if (step < tol * z) {
                BoundaryPoint out = solve_r(z, x_guess);
                attach_derivatives(out);
                return out;
            }
        }
    }

    ConstantValue make_constant(Real v, Real residual) const {
        ConstantValue c;
        c.error = error_scale() * (abs(v) > 1 ? abs(v) : Real(1));
        c.value = std::move(v);
        c.residual = std::move(residual);
        return c;
    }
};

Analytics::Analytics(const CoefficientTable& table, PrecisionContext ctx)
    : impl_(std::make_unique<Impl>(table, std::move(ctx))) {}

Analytics::~Analytics() = default;

const PrecisionContext& Analytics::ctx() const { return impl_->ctx; }

ConstantValue Analytics::alpha() const {
    ScopedPrecision sp(impl_->ctx.working_digits());
    BoundaryPoint pt = impl_->solve_r(Real(1));
    return impl_->make_constant(pt.r, pt.residual);
}

BoundaryPoint Analytics::solve_r(const Real& z) const {
    ScopedPrecision sp(impl_->ctx.working_digits());
    return impl_->solve_r(z);
}

void Analytics::attach_derivatives(BoundaryPoint& pt) const {
    ScopedPrecision sp(impl_->ctx.working_digits());
    impl_->attach_derivatives(pt);
}

CriticalPoint Analytics::find_z0() const {
    ScopedPrecision sp(impl_->ctx.working_digits());
    BoundaryPoint pt = impl_->solve_critical(Real(1) / 2, Real("1.5"));
    Real phi = pt.r_prime + pt.r / (2 * pt.z);
    CriticalPoint out;
    out.z0 = impl_->make_constant(pt.z, abs(phi));
    Real x0 = pt.r * sqrt(pt.z);
    out.x0 = impl_->make_constant(x0, pt.residual);
    out.c1 = impl_->make_constant(1 / x0, pt.residual);
    return out;
}

RateValue Analytics::rate_function(const Real& lambda) const {
    if (lambda < 0)
        throw contract_error("rate_function requires lambda >= 0");
    ScopedPrecision sp(impl_->ctx.working_digits());
    BoundaryPoint unit = impl_->solve_r(Real(1));
    impl_->attach_derivatives(unit);
    RateValue out;
    // critical-point equation at z = 1: r'(1) + lambda r(1) <= 0 means
    // r(z) z^lambda still decreases at z = 1, the critical z is at or
    // below 1, and the rate plateaus at 1/alpha
    if (unit.r_prime + lambda * unit.r <= 0) {
        out.value = impl_->make_constant(1 / unit.r, unit.residual);
        out.z_critical = 1;
        out.plateau = true;
        return out;
    }
    BoundaryPoint pt = impl_->solve_critical(lambda, Real("1.5"));
    out.value =
        impl_->make_constant(1 / (pt.r * pow(pt.z, lambda)), pt.residual);
    out.z_critical = pt.z;
    out.plateau = false;
    return out;
}

LeafStatistics Analytics::leaf_statistics() const {
    ScopedPrecision sp(impl_->ctx.working_digits());
    // route (i): bivariate table at z = 1
    BoundaryPoint pt = impl_->solve_r(Real(1));
    impl_->attach_derivatives(pt);
    Real al = pt.r, rp = pt.r_prime, rpp = pt.r_double_prime;
    Real m1 = -rp / al;
    Real s1 = rp * rp / (al * al) - (rp + rpp) / al;

    // route (ii): the single-summation series a_n(1), a_n'(1), a_n''(1)
    UnitSeries unit(impl_->derivative_series(), impl_->tail_tol());
    Real x = al;
    Real tol = impl_->newton_tol();
    for (unsigned iter = 0;; ++iter) {
        if (iter >= impl_->ctx.max_newton_iters)
            throw convergence_error("unit-series Newton did not converge", 0.0);
        HPartials hp = unit.h_partials(x);
        Real g = log(x) + 1 + hp.h;
        Real dx = -g / (1 / x + hp.hx);
        x += dx;
        if (abs(dx) < tol * (abs(x) + 1)) break;
    }
    HPartials hp = unit.h_partials(x);
    Real r = x, a = 1;
    Real fx = hp.hx / r + a / (r * r);
    Real fz = 1 + hp.hz / r;
    Real rp2 = -fz / fx;
    Real ap = r;  // a'(1) = r(1)
    Real fxx = (hp.hxx + hp.hx * hp.hx) / r - 2 * a / (r * r * r);
    Real fxy = hp.hx / r + 1 / (r * r);
    Real fxz = (hp.hxz + hp.hx * hp.hz) / r;
    Real fyz = hp.hz / r;
    Real fzz = (hp.hzz + hp.hz * hp.hz) / r;
    Real rpp2 =
        -(fxx * rp2 * rp2 + fxy * rp2 * ap + 2 * fxz * rp2 + fyz * ap + fzz) /
        fx;
    Real m2 = -rp2 / r;
    Real s2 = rp2 * rp2 / (r * r) - (rp2 + rpp2) / r;

    Real agree = pow10_int(-long(impl_->ctx.digits)) * 10;
    if (abs(m1 - m2) > agree || abs(s1 - s2) > agree)
        throw consistency_error(
            "leaf-statistics routes disagree: m delta " +
            format_significant(abs(m1 - m2), 3) + ", sigma^2 delta " +
            format_significant(abs(s1 - s2), 3));

    LeafStatistics out;
    out.mean = impl_->make_constant(m1, abs(m1 - m2));
    out.variance = impl_->make_constant(s1, abs(s1 - s2));
    return out;
}

ConstantValue Analytics::normal_approx_constant() const {
    ScopedPrecision sp(impl_->ctx.working_digits());
    LeafStatistics st = leaf_statistics();
    ConstantValue al = alpha();
    Real half = Real(1) / 2;
    Real d = half - st.mean.value;
    Real v = exp(-d * d / (2 * st.variance.value)) / al.value;
    return impl_->make_constant(v, al.residual);
}

std::string format_significant(const Real& value, unsigned digits) {
    if (digits == 0) throw contract_error("digits must be positive");
    if (value == 0) return "0";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, digits,
                             value.backend().data(), MPFR_RNDN);
    std::string s(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!s.empty() && s[0] == '-') {
        sign = "-";
        s.erase(0, 1);
    }
    // value = 0.s * 10^exp10
    std::string out;
    if (exp10 <= 0) {
        out = "0." + std::string(-exp10, '0') + s;
    } else if (static_cast<std::size_t>(exp10) >= s.size()) {
        out = s + std::string(exp10 - s.size(), '0');
    } else {
        out = s.substr(0, exp10) + "." + s.substr(exp10);
    }
    return sign + out;
}

bool digits_match(const Real& value, const std::string& reference,
                  unsigned digits) {
    ScopedPrecision sp(2 * digits + 20);
    Real ref(reference);
    if (ref == 0) return abs(value) < pow10_int(-long(digits));
    long lead = static_cast<long>(floor(log10(abs(ref))).convert_to<double>());
    Real ulp = pow10_int(lead - long(digits) + 1);
    return abs(value - ref) <= Real("1.1") * ulp;
}

}  // namespace leafrate
