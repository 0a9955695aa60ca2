#include "sdflow/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sdflow::fft {
namespace {

// FFTW planning is not thread-safe and new-array execution has alignment
// constraints, so each size keeps one plan pair plus scratch buffers guarded
// by a mutex.
struct Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    int n = 0;

    explicit Plans(int n_) : n(n_) {
        real = fftw_alloc_real(n);
        cplx = fftw_alloc_complex(n / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(n, real, cplx, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, cplx, real, FFTW_ESTIMATE);
    }
    ~Plans() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(cplx);
    }
    Plans(const Plans&) = delete;
};

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

Plans& plans_for(int n) {
    static std::map<int, std::unique_ptr<Plans>> registry;
    auto it = registry.find(n);
    if (it == registry.end())
        it = registry.emplace(n, std::make_unique<Plans>(n)).first;
    return *it->second;
}

} // namespace

std::vector<std::complex<double>> forward(std::span<const double> in) {
    const int n = static_cast<int>(in.size());
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("fft: length must be even and >= 2");
    std::lock_guard lock(registry_mutex());
    Plans& p = plans_for(n);
    std::memcpy(p.real, in.data(), n * sizeof(double));
    fftw_execute(p.fwd);
    std::vector<std::complex<double>> out(n / 2 + 1);
    std::memcpy(out.data(), p.cplx, (n / 2 + 1) * sizeof(fftw_complex));
    return out;
}

std::vector<double> inverse(std::span<const std::complex<double>> in, int n) {
    if (static_cast<int>(in.size()) != n / 2 + 1)
        throw std::invalid_argument("fft: spectrum length mismatch");
    std::lock_guard lock(registry_mutex());
    Plans& p = plans_for(n);
    std::memcpy(p.cplx, in.data(), (n / 2 + 1) * sizeof(fftw_complex));
    fftw_execute(p.bwd);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = p.real[j] / n;
    return out;
}

} // namespace sdflow::fft
