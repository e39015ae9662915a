#include "tcm/fft.hpp"

#include <fftw3.h>

#include <mutex>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace tcm {

namespace {
// FFTW plan creation is not thread-safe; execution through the new-array
// interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Field buffers run to a few hundred KB, above glibc's default mmap
// threshold, so every temporary would otherwise pay an mmap/munmap round
// trip. Keep them on the reusable heap.
void tune_allocator_once() {
#if defined(__GLIBC__)
    static const bool done = [] {
        mallopt(M_MMAP_THRESHOLD, 64 * 1024 * 1024);
        return true;
    }();
    (void)done;
#endif
}
}  // namespace

struct Transformer::Impl {
    Grid grid;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Impl(const Grid& g) : grid(g) {
        tune_allocator_once();
        const int n = grid.n();
        in = fftw_alloc_complex(grid.size());
        out = fftw_alloc_complex(grid.size());
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        fftw_free(in);
        fftw_free(out);
    }

    void zero_nyquist(SpectralField& f) const {
        const int n = grid.n();
        const int ny = n / 2;
        for (int j = 0; j < n; ++j) f.coeffs[grid.idx(ny, j)] = cplx{0.0, 0.0};
        for (int i = 0; i < n; ++i) f.coeffs[grid.idx(i, ny)] = cplx{0.0, 0.0};
    }
};

Transformer::Transformer(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
Transformer::~Transformer() = default;
Transformer::Transformer(Transformer&&) noexcept = default;
Transformer& Transformer::operator=(Transformer&&) noexcept = default;

const Grid& Transformer::grid() const { return impl_->grid; }

void Transformer::forward_into(const RealField& f, SpectralField& out) {
    if (!(f.grid == impl_->grid)) throw ShapeMismatch("forward: field grid differs from transformer grid");
    const std::size_t n2 = impl_->grid.size();
    if (out.coeffs.size() != n2) out = SpectralField(impl_->grid);
    for (std::size_t i = 0; i < n2; ++i) {
        impl_->in[i][0] = f.values[i];
        impl_->in[i][1] = 0.0;
    }
    fftw_execute(impl_->fwd);
    const double scale = 1.0 / static_cast<double>(n2);
    for (std::size_t i = 0; i < n2; ++i)
        out.coeffs[i] = cplx{impl_->out[i][0] * scale, impl_->out[i][1] * scale};
    impl_->zero_nyquist(out);
}

SpectralField Transformer::forward(const RealField& f) {
    SpectralField out(impl_->grid);
    forward_into(f, out);
    return out;
}

void Transformer::inverse_into(const SpectralField& f, RealField& out) {
    if (!(f.grid == impl_->grid)) throw ShapeMismatch("inverse: field grid differs from transformer grid");
    const std::size_t n2 = impl_->grid.size();
    if (out.values.size() != n2) out = RealField(impl_->grid);
    for (std::size_t i = 0; i < n2; ++i) {
        impl_->in[i][0] = f.coeffs[i].real();
        impl_->in[i][1] = f.coeffs[i].imag();
    }
    fftw_execute(impl_->bwd);
    for (std::size_t i = 0; i < n2; ++i) out.values[i] = impl_->out[i][0];
}

RealField Transformer::inverse(const SpectralField& f) {
    RealField out(impl_->grid);
    inverse_into(f, out);
    return out;
}

void Transformer::forward_pair(const RealField& a, const RealField& b,
                               SpectralField& ca, SpectralField& cb) {
    if (!(a.grid == impl_->grid) || !(b.grid == impl_->grid))
        throw ShapeMismatch("forward_pair: field grid differs from transformer grid");
    const Grid& g = impl_->grid;
    const std::size_t n2 = g.size();
    if (ca.coeffs.size() != n2) ca = SpectralField(g);
    if (cb.coeffs.size() != n2) cb = SpectralField(g);
    for (std::size_t i = 0; i < n2; ++i) {
        impl_->in[i][0] = a.values[i];
        impl_->in[i][1] = b.values[i];
    }
    fftw_execute(impl_->fwd);
    // X_k = a_k + i b_k with a, b real: split via X_k and conj(X_{-k}).
    const int n = g.n();
    const double half = 0.5 / static_cast<double>(n2);
    for (int i = 0; i < n; ++i) {
        const int mi = (n - i) % n;
        for (int j = 0; j < n; ++j) {
            const int mj = (n - j) % n;
            const std::size_t k = g.idx(i, j);
            const std::size_t mk = g.idx(mi, mj);
            const double xr = impl_->out[k][0], xi = impl_->out[k][1];
            const double yr = impl_->out[mk][0], yi = impl_->out[mk][1];
            ca.coeffs[k] = cplx{(xr + yr) * half, (xi - yi) * half};
            cb.coeffs[k] = cplx{(xi + yi) * half, (yr - xr) * half};
        }
    }
    impl_->zero_nyquist(ca);
    impl_->zero_nyquist(cb);
}

void Transformer::inverse_pair(const SpectralField& ca, const SpectralField& cb,
                               RealField& a, RealField& b) {
    if (!(ca.grid == impl_->grid) || !(cb.grid == impl_->grid))
        throw ShapeMismatch("inverse_pair: field grid differs from transformer grid");
    const std::size_t n2 = impl_->grid.size();
    if (a.values.size() != n2) a = RealField(impl_->grid);
    if (b.values.size() != n2) b = RealField(impl_->grid);
    // For Hermitian ca, cb the inverse of ca + i*cb has a in its real part
    // and b in its imaginary part.
    for (std::size_t i = 0; i < n2; ++i) {
        impl_->in[i][0] = ca.coeffs[i].real() - cb.coeffs[i].imag();
        impl_->in[i][1] = ca.coeffs[i].imag() + cb.coeffs[i].real();
    }
    fftw_execute(impl_->bwd);
    for (std::size_t i = 0; i < n2; ++i) {
        a.values[i] = impl_->out[i][0];
        b.values[i] = impl_->out[i][1];
    }
}

}  // namespace tcm
