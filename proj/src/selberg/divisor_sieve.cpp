#include <algorithm>

#include "envsieve/errors.hpp"
#include "envsieve/kernels.hpp"
#include "envsieve/selberg.hpp"

namespace envsieve::selberg {

namespace {

// Residues x mod d (d squarefree) with d | F(x), by CRT over the prime roots.
std::vector<std::uint64_t> residues_mod(const forms::LinearSystem& F, std::uint64_t d) {
    std::vector<std::uint64_t> res{0};
    std::uint64_t m = 1;
    for (auto [p, e] : arith::factor(d).factors) {
        if (e > 1) throw DomainError("divisor sieve moduli must be squarefree");
        auto roots = F.roots_mod_prime(p);
        std::uint64_t inv = arith::invmod(m % p, p);
        std::vector<std::uint64_t> next;
        next.reserve(res.size() * roots.size());
        for (std::uint64_t r : res)
            for (std::uint64_t s : roots) {
                std::uint64_t t = arith::mulmod((s + p - r % p) % p, inv, p);
                next.push_back(r + m * t);
            }
        res = std::move(next);
        m *= p;
    }
    std::sort(res.begin(), res.end());
    return res;
}

}  // namespace

DivisorSieve::DivisorSieve(const forms::LinearSystem& F, std::vector<std::uint64_t> moduli,
                           std::vector<std::vector<double>> weights)
    : moduli_(std::move(moduli)), weights_(std::move(weights)) {
    for (const auto& w : weights_)
        if (w.size() != moduli_.size()) throw ContractError("one weight per modulus is required in every channel");
    pattern_.assign(weights_.size(), std::vector<double>(kPeriod, 0.0));
    residues_.reserve(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        std::uint64_t d = moduli_[i];
        residues_.push_back(residues_mod(F, d));
        if (kPeriod % d != 0) {
            strided_.push_back(i);
            continue;
        }
        for (std::size_t c = 0; c < weights_.size(); ++c) {
            double w = weights_[c][i];
            if (w == 0.0) continue;
            for (std::uint64_t r : residues_[i])
                for (std::uint64_t x = r; x < kPeriod; x += d) pattern_[c][x] += w;
        }
    }
}

void DivisorSieve::accumulate(std::int64_t lo, std::size_t len, std::vector<std::vector<double>>& out) const {
    out.resize(weights_.size());
    const std::uint64_t start = arith::mod(lo, kPeriod);
    for (std::size_t c = 0; c < weights_.size(); ++c) {
        auto& o = out[c];
        o.resize(len);
        const double* pat = pattern_[c].data();
        std::size_t i = 0;
        std::uint64_t off = start;
        while (i < len) {
            std::size_t take = std::min<std::size_t>(len - i, kPeriod - off);
            std::copy(pat + off, pat + off + take, o.data() + i);
            i += take;
            off = 0;
        }
        for (std::size_t idx : strided_) {
            double w = weights_[c][idx];
            if (w == 0.0) continue;
            std::uint64_t d = moduli_[idx];
            std::uint64_t base = arith::mod(lo, d);
            for (std::uint64_t r : residues_[idx]) {
                std::uint64_t first = (r + d - base) % d;
                for (std::size_t x = first; x < len; x += d) o[x] += w;
            }
        }
    }
}

std::vector<double> beta_values(const SieveKit& kit, std::int64_t lo, std::size_t len) {
    std::vector<std::uint64_t> moduli(kit.support().begin(), kit.support().end());
    std::vector<double> lambda(kit.support_lambda_double().begin(), kit.support_lambda_double().end());
    DivisorSieve sieve(kit.form(), std::move(moduli), {std::move(lambda)});
    std::vector<std::vector<double>> acc;
    sieve.accumulate(lo, len, acc);
    std::vector<double> out(len);
    kernels::square_scale(acc[0], kit.G_double(), out);
    return out;
}

}  // namespace envsieve::selberg
