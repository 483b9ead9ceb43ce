#pragma once

#include <cstdint>

#include "kslab/field.hpp"

namespace kslab {

enum class AmplitudeRule { paper, normalized };

// High-frequency box-spectrum pair: phi has spectrum a*chi_{[-N,-N+r]},
// psi has spectrum a*chi_{[N+r,N+2r]}, with
//   a = r^{-1/2} N^{-(s-1/2)}   (paper rule)
//   a = r^{-1/2} N^{-s}         (normalized rule, O(1) H^s norms)
struct BoxPairSpec {
    double N = 32.0;
    double r = 1.0;
    double s = 0.25;
    AmplitudeRule rule = AmplitudeRule::paper;
};
double box_amplitude(const BoxPairSpec& spec);

enum class DataKind { zero, gaussian, sech, random_sobolev, box_phi, box_psi };

struct DataCatalogEntry {
    DataKind kind = DataKind::gaussian;
    double amplitude = 0.5;
    double width = 1.0;
    double center = -1.0;  // < 0 means "domain midpoint"
    double s = 0.75;       // target regularity for random_sobolev
    std::uint64_t seed = 1234;
    BoxPairSpec box{};
};

// Deterministic initial data.  gaussian/sech/random_sobolev are real fields;
// box_phi/box_psi are complex spectra (legal for the bilinear quadrature and
// norm computations, not for the real-field solver).  random_sobolev fills the
// dealiased band with |c_k| ~ <k>^{-s-1/2-eps} seeded phases and is rescaled so
// amplitude equals the H^s norm exactly.
SpectralField make_data(const DataCatalogEntry& entry, const Grid& g);

}  // namespace kslab
