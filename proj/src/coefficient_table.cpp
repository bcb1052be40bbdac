#include "leafrate/coefficient_table.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "leafrate/errors.hpp"

namespace leafrate {

namespace {
const BigInt kZero = 0;

// acc += j * a_j(z^k) * atilde_p(z), where atilde_1 = 1 and atilde_p = a_p
// otherwise.  Rows are coefficient vectors indexed by z-degree.
void accumulate_term(std::vector<BigInt>& acc,
                     const std::vector<LeafPolynomial>& rows, int j, int k,
                     int p) {
    const LeafPolynomial& aj = rows[j - 1];
    if (p == 1) {
        for (int m = 1; m <= j; ++m) {
            const BigInt& c = aj.coeff(m);
            if (c != 0) acc[m * k] += j * c;
        }
        return;
    }
    const LeafPolynomial& ap = rows[p - 1];
    for (int m = 1; m <= j; ++m) {
        const BigInt& cm = aj.coeff(m);
        if (cm == 0) continue;
        BigInt f = j * cm;
        for (int l = 1; l <= p; ++l) {
            const BigInt& cl = ap.coeff(l);
            if (cl != 0) acc[m * k + l] += f * cl;
        }
    }
}

LeafPolynomial finish_row(std::vector<BigInt> acc, int n_new, int n_prev) {
    for (auto& c : acc) {
        // the recurrence delivers n * a_{n+1}; division is exact
        if (c != 0) c /= n_prev;
    }
    acc.resize(n_new + 1);
    return LeafPolynomial(n_new, std::move(acc));
}

CoefficientTable build_impl(int order, bool parallel, int threads) {
    if (order < 1) throw contract_error("table order must be >= 1");
    std::vector<LeafPolynomial> rows;
    rows.reserve(order);
    rows.emplace_back(1, std::vector<BigInt>{0, 1});  // a_1(z) = z
    for (int n = 1; n < order; ++n) {
        std::vector<BigInt> acc(n + 2, kZero);
        if (!parallel) {
            for (int j = 1; j <= n; ++j)
                for (int k = 1; j * k <= n; ++k)
                    accumulate_term(acc, rows, j, k, n + 1 - j * k);
        } else {
#ifdef _OPENMP
            if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel
            {
                std::vector<BigInt> local(n + 2, kZero);
#pragma omp for schedule(dynamic) nowait
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; j * k <= n; ++k)
                        accumulate_term(local, rows, j, k, n + 1 - j * k);
#pragma omp critical
                for (int d = 0; d <= n + 1; ++d)
                    if (local[d] != 0) acc[d] += local[d];
            }
#else
            (void)threads;
            for (int j = 1; j <= n; ++j)
                for (int k = 1; j * k <= n; ++k)
                    accumulate_term(acc, rows, j, k, n + 1 - j * k);
#endif
        }
        rows.push_back(finish_row(std::move(acc), n + 1, n));
    }
    return CoefficientTable::from_rows(std::move(rows));
}

}  // namespace

const BigInt& LeafPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeff_.size())) return kZero;
    return coeff_[k];
}

BigInt LeafPolynomial::sum() const {
    BigInt s = 0;
    for (const auto& c : coeff_) s += c;
    return s;
}

BigInt LeafPolynomial::weighted_sum() const {
    BigInt s = 0;
    for (int k = 1; k < static_cast<int>(coeff_.size()); ++k) s += k * coeff_[k];
    return s;
}

BigInt LeafPolynomial::upper_half_sum() const { return tail_sum(n_ / 2 + 1); }

BigInt LeafPolynomial::tail_sum(int k_min) const {
    BigInt s = 0;
    for (int k = std::max(k_min, 0); k < static_cast<int>(coeff_.size()); ++k)
        s += coeff_[k];
    return s;
}

CoefficientTable CoefficientTable::build(int order, int threads) {
    return build_impl(order, true, threads);
}

CoefficientTable CoefficientTable::build_serial(int order) {
    return build_impl(order, false, 0);
}

CoefficientTable CoefficientTable::from_rows(std::vector<LeafPolynomial> rows) {
    CoefficientTable t;
    t.rows_ = std::move(rows);
    return t;
}

const LeafPolynomial& CoefficientTable::row(int n) const {
    if (n < 1 || n > order())
        throw contract_error("row index outside table order");
    return rows_[n - 1];
}

void CoefficientTable::save(std::ostream& os) const {
    os << "leafcount-table v1 N=" << order() << '\n';
    for (int n = 1; n <= order(); ++n)
        for (int k = 1; k <= n; ++k)
            if (a(n, k) != 0) os << n << ' ' << k << ' ' << a(n, k) << '\n';
}

void CoefficientTable::save_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw cache_error("cannot open cache file for writing: " + path, 0);
    save(os);
    if (!os) throw cache_error("write failure on cache file: " + path, 0);
}

CoefficientTable CoefficientTable::load(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw cache_error("empty cache file", 1);
    int order = 0;
    {
        std::istringstream hs(header);
        std::string magic, version, nfield;
        hs >> magic >> version >> nfield;
        if (magic != "leafcount-table" || version != "v1" ||
            nfield.rfind("N=", 0) != 0)
            throw cache_error("bad cache header: " + header, 1);
        try {
            order = std::stoi(nfield.substr(2));
        } catch (const std::exception&) {
            throw cache_error("bad cache header: " + header, 1);
        }
        if (order < 1) throw cache_error("bad cache order", 1);
    }
    std::vector<std::vector<BigInt>> coeff(order);
    for (int n = 1; n <= order; ++n) coeff[n - 1].assign(n + 1, kZero);
    std::string line;
    unsigned lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int n = 0, k = 0;
        std::string value;
        if (!(ls >> n >> k >> value) || n < 1 || n > order || k < 1 || k > n)
            throw cache_error("bad cache line: " + line, lineno);
        try {
            coeff[n - 1][k] = BigInt(value);
        } catch (const std::exception&) {
            throw cache_error("bad cache value: " + line, lineno);
        }
    }
    std::vector<LeafPolynomial> rows;
    rows.reserve(order);
    for (int n = 1; n <= order; ++n)
        rows.emplace_back(n, std::move(coeff[n - 1]));
    return from_rows(std::move(rows));
}

CoefficientTable CoefficientTable::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw cache_error("cannot open cache file: " + path, 0);
    return load(is);
}

std::vector<BigInt> specialize_counts(const CoefficientTable& table) {
    std::vector<BigInt> out;
    out.reserve(table.order());
    for (int n = 1; n <= table.order(); ++n) out.push_back(table.row(n).sum());
    return out;
}

DerivativeSeries DerivativeSeries::build(int order) {
    if (order < 1) throw contract_error("series order must be >= 1");
    DerivativeSeries ds;
    ds.order = order;
    auto& a = ds.value;
    auto& d1 = ds.first;
    auto& d2 = ds.second;
    a.assign(order, 0);
    d1.assign(order, 0);
    d2.assign(order, 0);
    a[0] = 1;
    d1[0] = 1;
    d2[0] = 0;
    // atilde_n(1) == a_n(1) for every n (a_1(1) = 1 as well), so the plain
    // values can be used throughout.
    for (int n = 1; n < order; ++n) {
        BigInt va = 0, vd1 = 0, vd2 = 0;
        for (int j = 1; j <= n; ++j) {
            BigInt s0 = 0;   // sum_k a_{n+1-kj}(1)
            BigInt s1 = 0;   // sum_k a'_{n+1-kj}(1), k <= (n-1)/j
            BigInt sk1 = 0;  // sum_k (k-1) a_{n+1-kj}(1)
            BigInt sk = 0;   // sum_k k a_{n+1-kj}(1)
            for (int k = 1; k * j <= n; ++k) {
                const BigInt& ap = a[n - k * j];  // a_{n+1-kj}(1)
                s0 += ap;
                sk1 += (k - 1) * ap;
                sk += k * ap;
                if (k * j <= n - 1) s1 += d1[n - k * j];
            }
            va += j * a[j - 1] * s0;
            vd1 += d1[j - 1] * s0;
            vd2 += d1[j - 1] * s1 + d1[j - 1] * sk1 + d2[j - 1] * sk;
        }
        a[n] = va / n;
        d1[n] = vd1;
        d2[n] = vd2;
    }
    return ds;
}

}  // namespace leafrate
