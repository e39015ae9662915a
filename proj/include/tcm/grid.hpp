#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "tcm/errors.hpp"

namespace tcm {

// Uniform periodic grid on the torus [0,S)^2, n points per axis.
// Wavenumber lattice: xi_k = 2*pi*k/S for integer k in [-n/2, n/2),
// stored in FFT order (0, 1, ..., n/2-1, -n/2, ..., -1).
// The Nyquist row k = -n/2 exists in storage but every constructed field
// keeps it identically zero.
class Grid {
  public:
    Grid() = default;
    Grid(int n_points, double side) : n_(n_points), side_(side) {
        xi_.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i)
            xi_[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * k_index(i) / side_;
    }

    int n() const { return n_; }
    double side() const { return side_; }
    double spacing() const { return side_ / n_; }
    // Lattice spacing in wavenumber space, 2*pi/S.
    double xi_spacing() const { return 2.0 * std::numbers::pi / side_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }

    // Integer wavenumber for storage index i.
    int k_index(int i) const { return (i < n_ / 2) ? i : i - n_; }
    double xi(int i) const { return xi_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& xi_all() const { return xi_; }
    bool is_nyquist(int i) const { return i == n_ / 2; }

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }

    // Collocation point coordinate along one axis.
    double x(int j) const { return side_ * j / n_; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.n_ == b.n_ && a.side_ == b.side_;
    }

  private:
    int n_ = 0;
    double side_ = 0.0;
    std::vector<double> xi_;
};

inline Grid make_grid(int n_points, double side) {
    if (n_points < 8 || n_points % 2 != 0)
        throw InvalidGrid("n_points must be even and >= 8, got " + std::to_string(n_points));
    if (!(side > 0.0) || !std::isfinite(side))
        throw InvalidGrid("side must be positive and finite");
    return Grid(n_points, side);
}

}  // namespace tcm
