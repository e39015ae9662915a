#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tcm::kernels {

using cplx = std::complex<double>;

// Data-parallel inner loops used by every module. Each kernel has an
// OpenMP version (this namespace) and a serial reference (kernels::serial)
// used by the test suite and the benchmark target.
//
// Reductions run over fixed-size blocks whose partial sums are combined in
// block order, so serial and parallel paths produce bit-identical results
// for any thread count.
//
// Threading engages only on arrays of about a million elements and up;
// below that the team overhead costs more than the loop on small core
// counts (see bench_kernels).

inline constexpr std::size_t reduction_block = 4096;

// out[i] = a[i] * b[i]
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
// acc[i] += a[i] * b[i]
void multiply_add(std::span<const double> a, std::span<const double> b, std::span<double> acc);
// acc[i] -= a[i] * b[i]
void multiply_sub(std::span<const double> a, std::span<const double> b, std::span<double> acc);
// c[i] *= m[i]
void apply_multiplier(std::span<cplx> c, std::span<const double> m);
void apply_multiplier(std::span<cplx> c, std::span<const cplx> m);
// y[i] += alpha * x[i]
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
// y[i] *= alpha
void scale(double alpha, std::span<cplx> y);
// y[i] = m[i] * y[i] + alpha * x[i]   (integrating-factor stage update)
void muladd_scaled(std::span<const double> m, cplx alpha, std::span<const cplx> x, std::span<cplx> y);

// Fused IF-RK4 stage updates; the multiplier is either a per-mode table or
// a plain scalar. Each runs in one pass.
// out = m (y + a x)
void stage_mul_add(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                   double a, std::span<const cplx> x);
void stage_mul_add(std::span<cplx> out, double m, std::span<const cplx> y, double a,
                   std::span<const cplx> x);
// out = m y + a x
void stage_add_mul(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                   double a, std::span<const cplx> x);
void stage_add_mul(std::span<cplx> out, double m, std::span<const cplx> y, double a,
                   std::span<const cplx> x);
// out = m^2 y + a m x
void stage_mul2_add(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                    double a, std::span<const cplx> x);
void stage_mul2_add(std::span<cplx> out, double m, std::span<const cplx> y, double a,
                    std::span<const cplx> x);
// y = m^2 (y + b k1) + 2 b m (k2 + k3) + b k4
void rk4_combine(std::span<cplx> y, std::span<const double> m, double b, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3, std::span<const cplx> k4);
void rk4_combine(std::span<cplx> y, double m, double b, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3, std::span<const cplx> k4);

// sum_i |c_i|
double sum_abs(std::span<const cplx> c);
// sum_i w_i * |c_i|^2
double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w);
// sum_i w_i * Re(a_i * conj(b_i))
double weighted_dot(std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w);
// max_i |v_i|
double max_abs(std::span<const double> v);
// max_i sqrt(sum_f w_f * fields[f][i]^2) over a small family of arrays
double max_weighted_magnitude(std::span<const std::span<const double>> fields,
                              std::span<const double> weights);

namespace serial {
void stage_mul_add(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                   double a, std::span<const cplx> x);
void stage_add_mul(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                   double a, std::span<const cplx> x);
void stage_mul2_add(std::span<cplx> out, std::span<const double> m, std::span<const cplx> y,
                    double a, std::span<const cplx> x);
void rk4_combine(std::span<cplx> y, std::span<const double> m, double b, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3, std::span<const cplx> k4);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void multiply_add(std::span<const double> a, std::span<const double> b, std::span<double> acc);
void multiply_sub(std::span<const double> a, std::span<const double> b, std::span<double> acc);
void apply_multiplier(std::span<cplx> c, std::span<const double> m);
void apply_multiplier(std::span<cplx> c, std::span<const cplx> m);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void scale(double alpha, std::span<cplx> y);
void muladd_scaled(std::span<const double> m, cplx alpha, std::span<const cplx> x, std::span<cplx> y);
double sum_abs(std::span<const cplx> c);
double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w);
double weighted_dot(std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w);
double max_abs(std::span<const double> v);
double max_weighted_magnitude(std::span<const std::span<const double>> fields,
                              std::span<const double> weights);
}  // namespace serial

}  // namespace tcm::kernels
