#pragma once

#include <numbers>
#include <stdexcept>

namespace kslab {

// Periodic collocation grid on [0, 2L) with n points and wavenumbers
// k_m = (pi/L) m for m = -n/2 .. n/2-1.
struct Grid {
    double half_length = 32.0;  // L
    int n = 1024;

    Grid() = default;
    Grid(double L, int npts) : half_length(L), n(npts) {
        if (!(L > 0.0)) throw std::invalid_argument("Grid: half_length must be positive");
        if (npts < 8 || npts % 2 != 0) throw std::invalid_argument("Grid: n must be even and >= 8");
    }

    double dx() const { return 2.0 * half_length / n; }
    double x(int j) const { return j * dx(); }
    double fundamental() const { return std::numbers::pi / half_length; }

    // Integer mode for storage index i (FFT layout: 0..n/2-1, -n/2..-1).
    int mode(int i) const { return i < n / 2 ? i : i - n; }
    double wavenumber(int i) const { return fundamental() * mode(i); }

    int nyquist_index() const { return n / 2; }
    // 2/3-rule cutoff: the quadratic product zeroes modes above this.  The
    // (n-1)/3 form keeps 2*limit <= n - limit - 1, so products of band-limited
    // fields are alias-free on the kept band for every n.
    int dealias_limit() const { return (n - 1) / 3; }

    bool operator==(const Grid&) const = default;
};

}  // namespace kslab
