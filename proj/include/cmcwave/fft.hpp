#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace cmcwave {

using cd = std::complex<double>;

// Thread-safe cache of FFTW plans. Plans are created once per (rank, size,
// direction) with FFTW_ESTIMATE | FFTW_UNALIGNED, so execution is
// deterministic and works on any caller buffer; fftw_execute_dft on distinct
// buffers is safe to call concurrently.
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans p;
        return p;
    }

    // In-place-capable 2D transform on an n-by-n row-major complex buffer.
    void dft2d(int n, std::complex<double>* in, std::complex<double>* out,
               int sign) {
        fftw_plan plan = get({2, n, sign});
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }

    void dft1d(int n, std::complex<double>* in, std::complex<double>* out,
               int sign) {
        fftw_plan plan = get({1, n, sign});
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }

    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

private:
    FftPlans() = default;
    ~FftPlans() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

    using Key = std::tuple<int, int, int>;  // rank, n, sign

    fftw_plan get(const Key& key) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        auto [rank, n, sign] = key;
        std::vector<std::complex<double>> scratch(
            rank == 2 ? static_cast<size_t>(n) * n : static_cast<size_t>(n));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p =
            rank == 2
                ? fftw_plan_dft_2d(n, n, buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED)
                : fftw_plan_dft_1d(n, buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

inline void fft2d_forward(int n, std::complex<double>* data) {
    FftPlans::instance().dft2d(n, data, data, FFTW_FORWARD);
}

inline void fft2d_backward(int n, std::complex<double>* data) {
    FftPlans::instance().dft2d(n, data, data, FFTW_BACKWARD);
}

inline void fft1d_forward(int n, std::complex<double>* data) {
    FftPlans::instance().dft1d(n, data, data, FFTW_FORWARD);
}

inline void fft1d_backward(int n, std::complex<double>* data) {
    FftPlans::instance().dft1d(n, data, data, FFTW_BACKWARD);
}

}  // namespace cmcwave
