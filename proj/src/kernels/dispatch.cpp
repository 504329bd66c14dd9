#include <atomic>

#include "envsieve/errors.hpp"
#include "envsieve/kernels.hpp"

namespace envsieve::kernels {

namespace {

Isa detect() { return avx2_supported() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

void check_sizes(std::size_t a, std::size_t b) {
    if (a != b) throw ContractError("kernel operands differ in length");
}

}  // namespace

bool avx2_compiled() {
#ifdef ENVSIEVE_HAVE_AVX2
    return true;
#else
    return false;
#endif
}

bool avx2_supported() {
#if defined(ENVSIEVE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() { return current().load(); }

void set_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_supported()) throw HypothesisError("AVX2 kernels are not available on this machine");
    current().store(isa);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "auto") return detect();
    return std::nullopt;
}

#ifdef ENVSIEVE_HAVE_AVX2
#define ENVSIEVE_DISPATCH(fn, ...) \
    (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define ENVSIEVE_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
    check_sizes(a.size(), b.size());
    check_sizes(a.size(), c.size());
    return ENVSIEVE_DISPATCH(dot3, a.data(), b.data(), c.data(), a.size());
}

double sum_abs2(std::span<const cplx> z) { return ENVSIEVE_DISPATCH(sum_abs2, z.data(), z.size()); }

double weighted_sum_abs2(std::span<const double> w, std::span<const cplx> z) {
    check_sizes(w.size(), z.size());
    return ENVSIEVE_DISPATCH(weighted_sum_abs2, w.data(), z.data(), z.size());
}

double sum_abs_pow(std::span<const cplx> z, double p) {
    return ENVSIEVE_DISPATCH(sum_abs_pow, z.data(), z.size(), p);
}

void square_scale(std::span<const double> x, double s, std::span<double> out) {
    check_sizes(x.size(), out.size());
#ifdef ENVSIEVE_HAVE_AVX2
    if (active_isa() == Isa::avx2) return avx2::square_scale(x.data(), s, out.data(), x.size());
#endif
    scalar::square_scale(x.data(), s, out.data(), x.size());
}

double sum_abs_diff_squares(std::span<const double> x, std::span<const double> y) {
    check_sizes(x.size(), y.size());
    return ENVSIEVE_DISPATCH(sum_abs_diff_squares, x.data(), y.data(), x.size());
}

}  // namespace envsieve::kernels
