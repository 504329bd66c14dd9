#include <map>

#include "envsieve/errors.hpp"
#include "envsieve/selberg.hpp"

namespace envsieve::selberg {

std::vector<cplx> w_oracle_row(const SieveKit& kit, std::uint64_t q) {
    const std::uint64_t R = kit.level();
    if (R > 12) throw BudgetError("w_oracle is a brute-force check limited to R <= 12");
    if (q == 0 || q > R * R) throw RangeError("w_oracle needs 1 <= q <= R^2");
    const auto& F = kit.form();

    struct Pair {
        std::uint64_t r;
        double coeff;  // mu(d) / gamma(r)
    };
    std::vector<Pair> pairs;
    for (std::uint64_t d = 1; d <= R; ++d) {
        int mu = arith::mobius(d);
        if (mu == 0) continue;
        for (std::uint64_t r = 1; d * r <= R; ++r) pairs.push_back({r, mu / kit.gamma(r).get_d()});
    }

    // E_{n mod lcm(L, q)} 1_{(L, F(n)) = 1} e_q(an) for every a, keyed by L.
    std::map<std::uint64_t, std::vector<cplx>> averages;
    auto average = [&](std::uint64_t L) -> const std::vector<cplx>& {
        auto it = averages.find(L);
        if (it != averages.end()) return it->second;
        std::uint64_t m = arith::lcm(L, q);
        std::vector<double> counts(q, 0.0);
        for (std::uint64_t n = 0; n < m; ++n)
            if (F.coprime(L, static_cast<std::int64_t>(n))) counts[n % q] += 1.0;
        std::vector<cplx> row(q);
        for (std::uint64_t a = 0; a < q; ++a) {
            cplx s = 0.0;
            for (std::uint64_t r = 0; r < q; ++r)
                if (counts[r] != 0.0) s += counts[r] * unit_root(static_cast<std::int64_t>(arith::mulmod(a, r, q)), q);
            row[a] = s / static_cast<double>(m);
        }
        return averages.emplace(L, std::move(row)).first->second;
    };

    std::vector<cplx> w(q, 0.0);
    for (const auto& p1 : pairs)
        for (const auto& p2 : pairs) {
            const auto& avg = average(arith::lcm(p1.r, p2.r));
            double c = p1.coeff * p2.coeff;
            for (std::uint64_t a = 0; a < q; ++a) w[a] += c * avg[a];
        }
    double G = kit.G_double();
    for (auto& v : w) v /= G;
    return w;
}

cplx w_oracle(const SieveKit& kit, ReducedFraction frac) { return w_oracle_row(kit, frac.q)[frac.a]; }

}  // namespace envsieve::selberg
