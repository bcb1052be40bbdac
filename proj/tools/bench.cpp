// Benchmark: serial reference kernels vs the OpenMP kernels, for the tree
// enumeration stream and the coefficient-table build.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "leafrate/coefficient_table.hpp"
#include "leafrate/enumerate.hpp"

namespace {

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 18;
    int order = argc > 2 ? std::atoi(argv[2]) : 120;
    std::cout << "threads available: " << omp_get_max_threads() << "\n\n";

    auto leaf_weight = [](const std::vector<int>& levels) -> std::uint64_t {
        int leaves = 0;
        for (std::size_t v = 0; v + 1 < levels.size(); ++v)
            if (levels[v + 1] <= levels[v]) ++leaves;
        return static_cast<std::uint64_t>(leaves + 1);
    };

    std::uint64_t s_total = 0, p_total = 0;
    double ts = timed([&] { s_total = leafrate::serial_count(n, leaf_weight); });
    double tp =
        timed([&] { p_total = leafrate::parallel_count(n, leaf_weight); });
    std::cout << "enumeration, total leaf weight over trees of size " << n
              << ":\n"
              << "  serial   " << ts << " s  (sum " << s_total << ")\n"
              << "  parallel " << tp << " s  (sum " << p_total << ")\n"
              << "  speedup  " << (tp > 0 ? ts / tp : 0.0) << "x\n\n";
    if (s_total != p_total) {
        std::cerr << "MISMATCH between serial and parallel kernels\n";
        return 1;
    }

    leafrate::CoefficientTable serial_table, parallel_table;
    double bs = timed(
        [&] { serial_table = leafrate::CoefficientTable::build_serial(order); });
    double bp =
        timed([&] { parallel_table = leafrate::CoefficientTable::build(order); });
    std::cout << "coefficient table build to order " << order << ":\n"
              << "  serial   " << bs << " s\n"
              << "  parallel " << bp << " s\n"
              << "  speedup  " << (bp > 0 ? bs / bp : 0.0) << "x\n";
    for (int i = 1; i <= order; ++i)
        if (serial_table.row(i).sum() != parallel_table.row(i).sum()) {
            std::cerr << "MISMATCH in table row " << i << "\n";
            return 1;
        }
    return 0;
}
