// Timing comparison of the serial reference kernels against the OpenMP
// versions, plus the paired-real transform path against single transforms.
// Build target only; not part of the test suite.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "tcm/fft.hpp"
#include "tcm/kernels.hpp"

using tcm::cplx;

namespace {

double seconds(auto fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.3f us %10.3f us  %5.2fx\n", name, serial * 1e6, parallel * 1e6,
                serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    int n = 1024;  // large enough that the parallel path engages
    if (argc > 1) n = std::atoi(argv[1]);
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    const int reps = 50;

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> a(n2), b(n2), out(n2), w(n2);
    std::vector<cplx> c(n2), x(n2);
    for (std::size_t i = 0; i < n2; ++i) {
        a[i] = uni(rng);
        b[i] = uni(rng);
        w[i] = 1.0 + uni(rng) * uni(rng);
        c[i] = cplx{uni(rng), uni(rng)};
        x[i] = cplx{uni(rng), uni(rng)};
    }

    std::printf("grid %d^2, %d reps\n", n, reps);
    std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "openmp", "speedup");

    report("multiply_add",
           seconds([&] { tcm::kernels::serial::multiply_add(a, b, out); }, reps),
           seconds([&] { tcm::kernels::multiply_add(a, b, out); }, reps));
    report("apply_multiplier",
           seconds([&] { tcm::kernels::serial::apply_multiplier(std::span<cplx>(c), w); }, reps),
           seconds([&] { tcm::kernels::apply_multiplier(std::span<cplx>(c), w); }, reps));
    report("axpy",
           seconds([&] { tcm::kernels::serial::axpy(cplx{0.5, 0.0}, x, c); }, reps),
           seconds([&] { tcm::kernels::axpy(cplx{0.5, 0.0}, x, c); }, reps));
    report("weighted_abs2_sum",
           seconds([&] { tcm::kernels::serial::weighted_abs2_sum(c, w); }, reps),
           seconds([&] { tcm::kernels::weighted_abs2_sum(c, w); }, reps));
    report("sum_abs",
           seconds([&] { tcm::kernels::serial::sum_abs(c); }, reps),
           seconds([&] { tcm::kernels::sum_abs(c); }, reps));
    report("max_abs",
           seconds([&] { tcm::kernels::serial::max_abs(a); }, reps),
           seconds([&] { tcm::kernels::max_abs(a); }, reps));

    // Transform path: two singles vs one packed pair.
    const tcm::Grid g = tcm::make_grid(n, 2.0 * 3.14159265358979323846);
    tcm::Transformer tr(g);
    tcm::RealField ra(g), rb(g);
    ra.values = a;
    rb.values = b;
    tcm::SpectralField ca(g), cb(g);
    const double t_single = seconds([&] {
        tr.forward_into(ra, ca);
        tr.forward_into(rb, cb);
    }, reps);
    const double t_pair = seconds([&] { tr.forward_pair(ra, rb, ca, cb); }, reps);
    report("two forwards vs pair", t_single, t_pair);

    return 0;
}
