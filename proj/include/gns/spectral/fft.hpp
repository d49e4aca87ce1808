#pragma once

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "gns/spectral/spectral_field.hpp"

namespace gns {

namespace detail {

struct FftwBuffer {
    explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
        if (!ptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    void* ptr;
};

/// Plans for one cube size. Execution uses the new-array interface on
/// per-call aligned scratch, so a plan can be shared across threads.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    ~PlanPair() {
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

struct FftContext {
    std::mutex mutex;
    std::map<int, std::unique_ptr<PlanPair>> plans;
    int threads = 1;
    bool threads_initialised = false;
};

inline FftContext& fft_context() {
    static FftContext ctx;
    return ctx;
}

inline const PlanPair& plans_for(int n) {
    auto& ctx = fft_context();
    std::lock_guard lock(ctx.mutex);
    auto it = ctx.plans.find(n);
    if (it != ctx.plans.end()) return *it->second;

    const std::size_t nreal = static_cast<std::size_t>(n) * n * n;
    const std::size_t ncplx = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    FftwBuffer real(nreal * sizeof(double));
    FftwBuffer spec(ncplx * sizeof(fftw_complex));
    auto pp = std::make_unique<PlanPair>();
    // FFTW_ESTIMATE keeps planning deterministic, so repeated runs are bit-stable.
    pp->forward = fftw_plan_dft_r2c_3d(n, n, n, static_cast<double*>(real.ptr),
                                       static_cast<fftw_complex*>(spec.ptr), FFTW_ESTIMATE);
    pp->backward = fftw_plan_dft_c2r_3d(n, n, n, static_cast<fftw_complex*>(spec.ptr),
                                        static_cast<double*>(real.ptr), FFTW_ESTIMATE);
    if (!pp->forward || !pp->backward) throw Error("fftw: planning failed");
    return *ctx.plans.emplace(n, std::move(pp)).first->second;
}

}  // namespace detail

/// Number of threads FFTW may use for plans created afterwards.
inline void set_fft_threads(int threads) {
    auto& ctx = detail::fft_context();
    std::lock_guard lock(ctx.mutex);
    if (!ctx.threads_initialised) {
        fftw_init_threads();
        ctx.threads_initialised = true;
    }
    ctx.threads = threads < 1 ? 1 : threads;
    fftw_plan_with_nthreads(ctx.threads);
    ctx.plans.clear();
}

/// Tolerated Hermitian defect before a spectrum is treated as corrupted.
inline constexpr double kCorruptionTolerance = 1e-9;

inline SpectralField forward_transform(const PhysicalField& f) {
    const Grid& g = f.grid;
    if (f.values.size() != g.physical_size())
        throw ShapeError("forward_transform: array size does not match grid");
    const auto& plans = detail::plans_for(g.n());
    detail::FftwBuffer real(g.physical_size() * sizeof(double));
    detail::FftwBuffer spec(g.spectral_size() * sizeof(fftw_complex));
    std::memcpy(real.ptr, f.values.data(), g.physical_size() * sizeof(double));
    fftw_execute_dft_r2c(plans.forward, static_cast<double*>(real.ptr),
                         static_cast<fftw_complex*>(spec.ptr));

    SpectralField out(g);
    const double scale = 1.0 / static_cast<double>(g.physical_size());
    const auto* src = static_cast<const fftw_complex*>(spec.ptr);
    auto& dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = cplx(src[i][0] * scale, src[i][1] * scale);
    return out;
}

inline PhysicalField inverse_transform(const SpectralField& s) {
    const Grid& g = s.grid();
    const double defect = s.hermitian_defect();
    double scale = 0.0;
    for (const auto& v : s.data()) scale = std::max(scale, std::abs(v));
    if (defect > kCorruptionTolerance * std::max(1.0, scale))
        throw CorruptedFieldError("inverse_transform: Hermitian symmetry violated by " +
                                  std::to_string(defect));
    const auto& plans = detail::plans_for(g.n());
    detail::FftwBuffer real(g.physical_size() * sizeof(double));
    detail::FftwBuffer spec(g.spectral_size() * sizeof(fftw_complex));
    std::memcpy(spec.ptr, s.data().data(), g.spectral_size() * sizeof(fftw_complex));
    fftw_execute_dft_c2r(plans.backward, static_cast<fftw_complex*>(spec.ptr),
                         static_cast<double*>(real.ptr));
    PhysicalField out(g);
    std::memcpy(out.values.data(), real.ptr, g.physical_size() * sizeof(double));
    return out;
}

}  // namespace gns
