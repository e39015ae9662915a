#include "tcm/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace tcm::kernels {

namespace {

// Block partials accumulated in index order keep parallel sums bit-identical
// to the serial reference.
template <class BlockFn>
double blocked_reduce_sum(std::size_t n, BlockFn&& block_sum) {
    const std::size_t nblocks = (n + reduction_block - 1) / reduction_block;
    std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static) if (nblocks >= 256)
    for (long b = 0; b < static_cast<long>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduction_block;
        const std::size_t hi = std::min(lo + reduction_block, n);
        partial[static_cast<std::size_t>(b)] = block_sum(lo, hi);
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

template <class BlockFn>
double blocked_reduce_sum_serial(std::size_t n, BlockFn&& block_sum) {
    const std::size_t nblocks = (n + reduction_block - 1) / reduction_block;
    double total = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::size_t lo = b * reduction_block;
        const std::size_t hi = std::min(lo + reduction_block, n);
        total += block_sum(lo, hi);
    }
    return total;
}

template <class BlockFn>
double blocked_reduce_max(std::size_t n, BlockFn&& block_max) {
    const std::size_t nblocks = (n + reduction_block - 1) / reduction_block;
    std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static) if (nblocks >= 256)
    for (long b = 0; b < static_cast<long>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduction_block;
        const std::size_t hi = std::min(lo + reduction_block, n);
        partial[static_cast<std::size_t>(b)] = block_max(lo, hi);
    }
    double m = 0.0;
    for (double p : partial) m = std::max(m, p);
    return m;
}

}  // namespace

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
}

void multiply_add(std::span<const double> a, std::span<const double> b, std::span<double> acc) {
    const long n = static_cast<long>(acc.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) acc[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
}

void multiply_sub(std::span<const double> a, std::span<const double> b, std::span<double> acc) {
    const long n = static_cast<long>(acc.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) acc[static_cast<std::size_t>(i)] -= a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
}

void apply_multiplier(std::span<cplx> c, std::span<const double> m) {
    const long n = static_cast<long>(c.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] *= m[static_cast<std::size_t>(i)];
}

void apply_multiplier(std::span<cplx> c, std::span<const cplx> m) {
    const long n = static_cast<long>(c.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] *= m[static_cast<std::size_t>(i)];
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
}

void scale(double alpha, std::span<cplx> y) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] *= alpha;
}

void muladd_scaled(std::span<const double> m, cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        y[k] = m[k] * y[k] + alpha * x[k];
    }
}

void stage_mul_add(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                   double a, std::span<const cplx> x) {
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = m[k] * (y[k] + a * x[k]);
    }
}

void stage_mul_add(std::span<cplx> out, double m, std::span<const cplx> y, double a,
                   std::span<const cplx> x) {
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = m * (y[k] + a * x[k]);
    }
}

void stage_add_mul(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                   double a, std::span<const cplx> x) {
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = m[k] * y[k] + a * x[k];
    }
}

void stage_add_mul(std::span<cplx> out, double m, std::span<const cplx> y, double a,
                   std::span<const cplx> x) {
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = m * y[k] + a * x[k];
    }
}

void stage_mul2_add(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                    double a, std::span<const cplx> x) {
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = m[k] * (m[k] * y[k] + a * x[k]);
    }
}

void stage_mul2_add(std::span<cplx> out, double m, std::span<const cplx> y, double a,
                    std::span<const cplx> x) {
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = m * (m * y[k] + a * x[k]);
    }
}

void rk4_combine(std::span<cplx> y, std::span<const double> m, double b, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3, std::span<const cplx> k4) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        y[k] = m[k] * m[k] * (y[k] + b * k1[k]) + 2.0 * b * m[k] * (k2[k] + k3[k]) + b * k4[k];
    }
}

void rk4_combine(std::span<cplx> y, double m, double b, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3, std::span<const cplx> k4) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static) if (n >= 1048576)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        y[k] = m * m * (y[k] + b * k1[k]) + 2.0 * b * m * (k2[k] + k3[k]) + b * k4[k];
    }
}

double sum_abs(std::span<const cplx> c) {
    return blocked_reduce_sum(c.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::abs(c[i]);
        return s;
    });
}

double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w) {
    return blocked_reduce_sum(c.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += w[i] * std::norm(c[i]);
        return s;
    });
}

double weighted_dot(std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w) {
    return blocked_reduce_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
        return s;
    });
}

double max_abs(std::span<const double> v) {
    return blocked_reduce_max(v.size(), [&](std::size_t lo, std::size_t hi) {
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(v[i]));
        return m;
    });
}

double max_weighted_magnitude(std::span<const std::span<const double>> fields,
                              std::span<const double> weights) {
    if (fields.empty()) return 0.0;
    return blocked_reduce_max(fields[0].size(), [&](std::size_t lo, std::size_t hi) {
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            double s = 0.0;
            for (std::size_t f = 0; f < fields.size(); ++f) {
                const double v = fields[f][i];
                s += weights[f] * v * v;
            }
            m = std::max(m, s);
        }
        return std::sqrt(m);
    });
}

namespace serial {

void stage_mul_add(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                   double a, std::span<const cplx> x) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] * (y[i] + a * x[i]);
}

void stage_add_mul(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                   double a, std::span<const cplx> x) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] * y[i] + a * x[i];
}

void stage_mul2_add(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                    double a, std::span<const cplx> x) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] * (m[i] * y[i] + a * x[i]);
}

void rk4_combine(std::span<cplx> y, std::span<const double> m, double b, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3, std::span<const cplx> k4) {
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = m[i] * m[i] * (y[i] + b * k1[i]) + 2.0 * b * m[i] * (k2[i] + k3[i]) + b * k4[i];
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void multiply_add(std::span<const double> a, std::span<const double> b, std::span<double> acc) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * b[i];
}

void multiply_sub(std::span<const double> a, std::span<const double> b, std::span<double> acc) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= a[i] * b[i];
}

void apply_multiplier(std::span<cplx> c, std::span<const double> m) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m[i];
}

void apply_multiplier(std::span<cplx> c, std::span<const cplx> m) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m[i];
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<cplx> y) {
    for (auto& v : y) v *= alpha;
}

void muladd_scaled(std::span<const double> m, cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = m[i] * y[i] + alpha * x[i];
}

double sum_abs(std::span<const cplx> c) {
    return blocked_reduce_sum_serial(c.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::abs(c[i]);
        return s;
    });
}

double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w) {
    return blocked_reduce_sum_serial(c.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += w[i] * std::norm(c[i]);
        return s;
    });
}

double weighted_dot(std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w) {
    return blocked_reduce_sum_serial(a.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
        return s;
    });
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_weighted_magnitude(std::span<const std::span<const double>> fields,
                              std::span<const double> weights) {
    if (fields.empty()) return 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < fields[0].size(); ++i) {
        double s = 0.0;
        for (std::size_t f = 0; f < fields.size(); ++f) {
            const double v = fields[f][i];
            s += weights[f] * v * v;
        }
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

}  // namespace serial

}  // namespace tcm::kernels
