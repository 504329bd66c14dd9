#include "envsieve/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "envsieve/errors.hpp"

namespace envsieve::fft {

namespace {

enum class Kind { c2c_forward, c2c_backward, r2c };

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using Buffer = std::unique_ptr<T[], FftwDeleter>;

template <class T>
Buffer<T> allocate(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * (n == 0 ? 1 : n)));
    if (p == nullptr) throw BudgetError("FFT buffer allocation failed");
    return Buffer<T>(p);
}

// Plans are created once per (size, kind) under a lock and then executed
// through the new-array interface, which FFTW documents as thread-safe.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, Kind kind) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, kind);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        fftw_plan plan = nullptr;
        int len = static_cast<int>(n);
        if (kind == Kind::r2c) {
            auto in = allocate<double>(n);
            auto out = allocate<fftw_complex>(n / 2 + 1);
            plan = fftw_plan_dft_r2c_1d(len, in.get(), out.get(), FFTW_ESTIMATE);
        } else {
            auto in = allocate<fftw_complex>(n);
            auto out = allocate<fftw_complex>(n);
            int sign = kind == Kind::c2c_forward ? FFTW_FORWARD : FFTW_BACKWARD;
            plan = fftw_plan_dft_1d(len, in.get(), out.get(), sign, FFTW_ESTIMATE);
        }
        if (plan == nullptr) throw BudgetError("FFTW could not create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, Kind>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

std::vector<cplx> complex_transform(std::span<const cplx> x, Kind kind) {
    std::size_t n = x.size();
    if (n == 0) return {};
    fftw_plan plan = cache().get(n, kind);
    auto in = allocate<fftw_complex>(n);
    auto out = allocate<fftw_complex>(n);
    std::memcpy(in.get(), x.data(), n * sizeof(cplx));
    fftw_execute_dft(plan, in.get(), out.get());
    std::vector<cplx> result(n);
    std::memcpy(static_cast<void*>(result.data()), out.get(), n * sizeof(cplx));
    return result;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> x) { return complex_transform(x, Kind::c2c_forward); }

std::vector<cplx> backward(std::span<const cplx> x) { return complex_transform(x, Kind::c2c_backward); }

std::vector<cplx> forward_real(std::span<const double> x) {
    std::size_t n = x.size();
    if (n == 0) return {};
    fftw_plan plan = cache().get(n, Kind::r2c);
    auto in = allocate<double>(n);
    auto out = allocate<fftw_complex>(n / 2 + 1);
    std::memcpy(in.get(), x.data(), n * sizeof(double));
    fftw_execute_dft_r2c(plan, in.get(), out.get());
    std::vector<cplx> result(n / 2 + 1);
    std::memcpy(static_cast<void*>(result.data()), out.get(), result.size() * sizeof(cplx));
    return result;
}

}  // namespace envsieve::fft
