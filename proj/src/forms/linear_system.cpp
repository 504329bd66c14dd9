#include <algorithm>

#include "envsieve/errors.hpp"
#include "envsieve/forms.hpp"

namespace envsieve::forms {

Integer discriminant(std::span<const LinearForm> forms) {
    Integer d = 1;
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i + 1; j < forms.size(); ++j)
            d *= to_integer(forms[i].a) * to_integer(forms[j].b) - to_integer(forms[j].a) * to_integer(forms[i].b);
    if (d == 0) throw DegenerateFormError("linear forms have zero discriminant (two forms are proportional)");
    return d;
}

LinearSystem::LinearSystem(std::vector<LinearForm> forms) : forms_(std::move(forms)) {
    if (forms_.empty()) throw DegenerateFormError("a linear system needs at least one form");
    for (const auto& f : forms_)
        if (f.a == 0) throw DegenerateFormError("linear form with zero leading coefficient");
    discriminant_ = envsieve::forms::discriminant(forms_);
}

namespace {

std::uint64_t form_mod(const LinearForm& f, std::int64_t n, std::uint64_t q) {
    __int128 v = static_cast<__int128>(f.a) * n + f.b;
    __int128 r = v % static_cast<__int128>(q);
    if (r < 0) r += q;
    return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t LinearSystem::value_mod(std::int64_t n, std::uint64_t q) const {
    if (q == 0) throw DomainError("modulus must be positive");
    std::uint64_t v = 1 % q;
    for (const auto& f : forms_) v = arith::mulmod(v, form_mod(f, n, q), q);
    return v;
}

bool LinearSystem::coprime(std::uint64_t q, std::int64_t n) const {
    if (q == 1) return true;
    for (const auto& f : forms_)
        if (arith::gcd(form_mod(f, n, q), q) != 1) return false;
    return true;
}

bool LinearSystem::value_is_zero(std::int64_t n) const {
    return std::any_of(forms_.begin(), forms_.end(),
                       [n](const LinearForm& f) { return static_cast<__int128>(f.a) * n + f.b == 0; });
}

Integer LinearSystem::value(std::int64_t n) const {
    Integer v = 1;
    for (const auto& f : forms_) v *= to_integer(f.a) * to_integer(n) + to_integer(f.b);
    return v;
}

std::vector<std::uint64_t> LinearSystem::roots_mod_prime(std::uint64_t p) const {
    std::vector<std::uint64_t> roots;
    for (const auto& f : forms_) {
        std::uint64_t a = arith::mod(f.a, p);
        std::uint64_t b = arith::mod(f.b, p);
        if (a == 0) {
            if (b != 0) continue;
            roots.resize(p);
            for (std::uint64_t r = 0; r < p; ++r) roots[r] = r;
            return roots;
        }
        std::uint64_t r = arith::mulmod((p - b) % p, arith::invmod(a, p), p);
        roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::string LinearSystem::to_string() const {
    std::string out;
    for (const auto& f : forms_) {
        std::string term;
        if (f.a == 1) term = "n";
        else if (f.a == -1) term = "-n";
        else term = std::to_string(f.a) + "n";
        if (f.b > 0) term += "+" + std::to_string(f.b);
        else if (f.b < 0) term += std::to_string(f.b);
        out += term == "n" ? term : "(" + term + ")";
    }
    return out;
}

}  // namespace envsieve::forms
