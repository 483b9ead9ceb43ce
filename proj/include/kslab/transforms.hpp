#pragma once

#include <vector>

#include "kslab/field.hpp"

namespace kslab {

// DFT with the series normalization: forward returns c_i = (1/n) sum_j u_j e^{-2pi i ij/n},
// backward evaluates u_j = sum_i c_i e^{+2pi i ij/n}.  Plans are cached per size and
// creation is mutex-guarded; execution on distinct buffers is safe concurrently.
std::vector<cplx> fft_forward(const std::vector<cplx>& values);
std::vector<cplx> fft_backward(const std::vector<cplx>& coeffs);

}  // namespace kslab
