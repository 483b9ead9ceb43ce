#include "kslab/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace kslab {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

struct PlanCache {
    std::map<int, PlanPair> plans;
    ~PlanCache() {
        for (auto& [n, p] : plans) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
        }
        fftw_cleanup();
    }
};

std::mutex g_plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static PlanCache cache;
    return cache.plans;
}

// Plans are created once per size on scratch buffers with FFTW_UNALIGNED so they
// can be re-executed on any caller-owned arrays via fftw_execute_dft.
PlanPair plans_for(int n) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    fftw_complex* a = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_complex* b = fftw_alloc_complex(static_cast<size_t>(n));
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(n, p);
    return p;
}

}  // namespace

std::vector<cplx> fft_forward(const std::vector<cplx>& values) {
    const int n = static_cast<int>(values.size());
    PlanPair p = plans_for(n);
    std::vector<cplx> out(values.size());
    auto* in = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(values.data()));
    fftw_execute_dft(p.fwd, in, reinterpret_cast<fftw_complex*>(out.data()));
    const double inv = 1.0 / n;
    for (auto& c : out) c *= inv;
    return out;
}

std::vector<cplx> fft_backward(const std::vector<cplx>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    PlanPair p = plans_for(n);
    std::vector<cplx> out(coeffs.size());
    auto* in = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(coeffs.data()));
    fftw_execute_dft(p.bwd, in, reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace kslab
