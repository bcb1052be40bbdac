// Command-line front end: coefficient tables, growth constants, the rate
// function, and the degree-indexed tree counts.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leafrate/analytics.hpp"
#include "leafrate/arnold.hpp"
#include "leafrate/coefficient_table.hpp"
#include "leafrate/errors.hpp"

namespace {

using namespace leafrate;

std::string default_cache() {
    const char* env = std::getenv("LEAFRATE_CACHE");
    return env ? env : "";
}

// Loads the cache when present and large enough, otherwise builds (and
// saves when a path is configured).
CoefficientTable obtain_table(int order, const std::string& cache,
                              int threads) {
    if (!cache.empty() && std::filesystem::exists(cache)) {
        CoefficientTable t = CoefficientTable::load_file(cache);
        if (t.order() >= order) return t;
    }
    CoefficientTable t = CoefficientTable::build(order, threads);
    if (!cache.empty()) t.save_file(cache);
    return t;
}

int run_counts(int n, const std::string& cache, int threads,
               const std::string& format) {
    CoefficientTable table = obtain_table(n, cache, threads);
    const char sep = format == "csv" ? ',' : ' ';
    if (format == "csv") std::cout << "n,k,value\n";
    for (int row = 1; row <= n; ++row) {
        const LeafPolynomial& poly = table.row(row);
        for (int k = 1; k <= row; ++k)
            if (poly.coeff(k) != 0)
                std::cout << row << sep << k << sep << poly.coeff(k) << '\n';
    }
    return 0;
}

int run_constants(unsigned digits, int order, const std::string& cache,
                  int threads) {
    PrecisionContext ctx;
    ctx.digits = digits;
    if (order > 0) ctx.order = static_cast<unsigned>(order);
    CoefficientTable table =
        obtain_table(static_cast<int>(ctx.effective_order()), cache, threads);
    Analytics an(table, ctx);
    std::cout << "alpha = " << format_significant(an.alpha().value, digits)
              << '\n';
    CriticalPoint cp = an.find_z0();
    std::cout << "z0 = " << format_significant(cp.z0.value, digits) << '\n';
    std::cout << "x0 = " << format_significant(cp.x0.value, digits) << '\n';
    std::cout << "C1 = " << format_significant(cp.c1.value, digits) << '\n';
    LeafStatistics st = an.leaf_statistics();
    std::cout << "m = " << format_significant(st.mean.value, digits) << '\n';
    std::cout << "sigma2 = " << format_significant(st.variance.value, digits)
              << '\n';
    std::cout << "C2 = "
              << format_significant(an.normal_approx_constant().value, digits)
              << '\n';
    return 0;
}

int run_rate(const std::vector<double>& lambdas, unsigned digits, int order,
             const std::string& cache, int threads) {
    PrecisionContext ctx;
    ctx.digits = digits;
    if (order > 0) ctx.order = static_cast<unsigned>(order);
    CoefficientTable table =
        obtain_table(static_cast<int>(ctx.effective_order()), cache, threads);
    Analytics an(table, ctx);
    for (double lam : lambdas) {
        RateValue rv = an.rate_function(Real(lam));
        std::cout << "C_lambda = " << format_significant(rv.value.value, digits)
                  << '\n';
    }
    return 0;
}

int run_arnold(const std::vector<int>& degrees, const std::string& cache,
               int threads, std::uint64_t budget) {
    int max_n = 1;
    for (int d : degrees) max_n = std::max(max_n, vertex_budget(d).n_max);
    CoefficientTable table = obtain_table(max_n, cache, threads);
    std::vector<ArnoldReport> rows =
        rate_report(degrees, table, budget, threads);
    std::cout << report_csv(rows);
    bool partial = false;
    for (const ArnoldReport& row : rows)
        if (row.d % 2 == 0 && !row.has_a) {
            std::cout << "# A_" << row.d
                      << " not computed: enumeration budget exceeded\n";
            partial = true;
        }
    return partial ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Rooted-tree leaf statistics: exact coefficient tables, growth "
        "constants, and degree-indexed admissible-tree counts"};
    app.require_subcommand(1);

    std::string cache = default_cache();
    int threads = 0;
    unsigned digits = 30;
    int order = 0;
    std::string format = "text";
    app.add_option("--cache", cache,
                   "coefficient table cache file (default: $LEAFRATE_CACHE)");
    app.add_option("--threads", threads, "worker threads (0: hardware)");

    auto* counts = app.add_subcommand(
        "counts", "print the exact (vertices, leaves) -> count table");
    int n = 10;
    counts->add_option("--n,-n", n, "largest vertex count")
        ->check(CLI::PositiveNumber);
    counts->add_option("--format", format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));

    auto* constants = app.add_subcommand(
        "constants", "print alpha, z0, x0, C1, m, sigma2, C2");
    constants->add_option("--digits", digits, "significant digits")
        ->check(CLI::PositiveNumber);
    constants->add_option("--order", order,
                          "series truncation order (default: from digits)");

    auto* rate =
        app.add_subcommand("rate", "print the rate constant C(lambda)");
    std::vector<double> lambdas;
    rate->add_option("--lambda", lambdas, "lambda values")
        ->delimiter(',')
        ->required();
    rate->add_option("--digits", digits, "significant digits")
        ->check(CLI::PositiveNumber);
    rate->add_option("--order", order,
                     "series truncation order (default: from digits)");

    auto* arnold =
        app.add_subcommand("arnold", "CSV of N_d, K_d, L_d, L'_d, A_d");
    std::vector<int> degrees;
    std::uint64_t budget = 50'000'000;
    arnold->add_option("--degrees", degrees, "curve degrees")
        ->delimiter(',')
        ->required();
    arnold->add_option("--budget", budget,
                       "enumeration budget (trees) for the A_d counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*counts) return run_counts(n, cache, threads, format);
        if (*constants) return run_constants(digits, order, cache, threads);
        if (*rate) return run_rate(lambdas, digits, order, cache, threads);
        if (*arnold) return run_arnold(degrees, cache, threads, budget);
    } catch (const leafrate::cache_error& e) {
        std::cerr << "cache error (line " << e.line << "): " << e.what()
                  << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
