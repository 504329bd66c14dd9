#include <algorithm>

#include "envsieve/errors.hpp"
#include "envsieve/selberg.hpp"

namespace envsieve::selberg {

ReducedFraction ReducedFraction::make(std::int64_t a, std::uint64_t q) {
    if (q == 0) throw DomainError("fraction with zero denominator");
    std::uint64_t r = arith::mod(a, q);
    std::uint64_t g = arith::gcd(r, q);  // gcd(0, q) = q, so 0/q becomes 0/1
    return {r / g, q / g};
}

SieveKit::SieveKit(forms::LinearSystem F, std::uint64_t R) : F_(std::move(F)), R_(R) {
    if (R == 0) throw DomainError("sieve level must be at least 1");
    if (!forms::nondegenerate(F_)) throw DegenerateFormError("sieve kit needs a nondegenerate system: " + F_.to_string());

    arith::SmallestFactorTable spf(std::max<std::uint64_t>(R, 2));
    std::vector<Rational> gp(R + 1);
    for (std::uint64_t p = 2; p <= R; ++p)
        if (spf.is_prime(p)) {
            gp[p] = forms::gamma_prime(F_, p);
            small_primes_.push_back(p);
        }

    gamma_.assign(R + 1, Rational(0));
    h_.assign(R + 1, Rational(0));
    gamma_[1] = 1;
    h_[1] = 1;
    G_ = 1;
    support_.push_back(1);
    for (std::uint64_t d = 2; d <= R; ++d) {
        auto f = spf.factor(d);
        Rational g = 1, h = 1;
        for (auto [p, e] : f.factors) {
            g *= gp[p];
            h *= (1 - gp[p]) / gp[p];
        }
        gamma_[d] = g;
        if (f.squarefree()) {
            h_[d] = h;
            G_ += h;
            support_.push_back(d);
        }
    }
    G_d_ = G_.get_d();

    for (std::uint64_t d : support_) {
        int mu = arith::arith_functions(spf.factor(d)).mu;
        Rational l = G_coprime(R / d, d) / (gamma_[d] * G_);
        if (mu < 0) l = -l;
        lambda_.push_back(l);
        lambda_d_.push_back(l.get_d());
    }
}

const Rational& SieveKit::gamma(std::uint64_t d) const {
    if (d == 0 || d > R_) throw RangeError("gamma table covers 1..R");
    return gamma_[d];
}

const Rational& SieveKit::h(std::uint64_t d) const {
    if (d == 0 || d > R_) throw RangeError("h table covers 1..R");
    return h_[d];
}

Rational SieveKit::G_coprime(std::uint64_t x, std::uint64_t d) const {
    if (x > R_) throw RangeError("G_d(x) is tabulated only for x <= R");
    Rational s = 0;
    for (std::uint64_t q = 1; q <= x; ++q)
        if (h_[q] != 0 && arith::gcd(q, d) == 1) s += h_[q];
    return s;
}

Rational SieveKit::lambda(std::uint64_t d) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), d);
    if (it == support_.end() || *it != d) return 0;
    return lambda_[static_cast<std::size_t>(it - support_.begin())];
}

bool SieveKit::sieved(std::int64_t n) const {
    for (std::uint64_t p : small_primes_)
        if (F_.divides_value(p, n)) return false;
    return true;
}

Rational alpha_div_periodic(const SieveKit& kit, std::int64_t n) {
    Rational s = 0;
    auto support = kit.support();
    auto lambda = kit.support_lambda();
    for (std::size_t i = 0; i < support.size(); ++i)
        if (kit.form().divides_value(support[i], n)) s += lambda[i];
    return kit.G() * s;
}

Rational beta_periodic(const SieveKit& kit, std::int64_t n) {
    Rational a = alpha_div_periodic(kit, n);
    return a * a / kit.G();
}

Rational alpha_div(const SieveKit& kit, std::int64_t n) {
    if (kit.form().value_is_zero(n)) throw DomainError("F(n) = 0: every d divides F(n)");
    return alpha_div_periodic(kit, n);
}

Rational beta(const SieveKit& kit, std::int64_t n) {
    if (kit.form().value_is_zero(n)) throw DomainError("F(n) = 0: every d divides F(n)");
    return beta_periodic(kit, n);
}

}  // namespace envsieve::selberg
