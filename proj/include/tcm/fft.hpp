#pragma once

#include <memory>

#include "tcm/field.hpp"

namespace tcm {

// FFTW-backed transform pair for one grid, full complex spectrum.
//
// forward: collocation values -> series coefficients c_k (1/n^2 scaling,
//          Nyquist rows zeroed).
// inverse: coefficients -> values of sum_k c_k e^{i xi_k . x} at grid points.
//
// Plans are created with FFTW_ESTIMATE so the algorithm choice, and with it
// the bit pattern of every result, is reproducible run to run.
//
// An instance is not safe for concurrent use (it owns scratch buffers);
// create one per thread or trajectory.
class Transformer {
  public:
    explicit Transformer(const Grid& grid);
    ~Transformer();

    Transformer(const Transformer&) = delete;
    Transformer& operator=(const Transformer&) = delete;
    Transformer(Transformer&&) noexcept;
    Transformer& operator=(Transformer&&) noexcept;

    const Grid& grid() const;

    SpectralField forward(const RealField& f);
    RealField inverse(const SpectralField& f);

    // Two real transforms through one complex FFT (packed as re + i*im).
    // Not bit-identical to two single transforms, but deterministic.
    void forward_pair(const RealField& a, const RealField& b, SpectralField& ca, SpectralField& cb);
    void inverse_pair(const SpectralField& ca, const SpectralField& cb, RealField& a, RealField& b);

    // In-place variants reusing caller storage.
    void forward_into(const RealField& f, SpectralField& out);
    void inverse_into(const SpectralField& f, RealField& out);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace tcm
