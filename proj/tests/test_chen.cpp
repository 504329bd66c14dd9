#include <doctest.h>

#include <cstdlib>
#include <set>

#include "envsieve/chen.hpp"
#include "envsieve/errors.hpp"
#include "support/oracles.hpp"

using namespace envsieve;
using namespace envsieve::chen;

namespace {

// Chen test by trial division with exact integer powers; valid for p < 10^4.
bool oracle_chen(std::uint64_t p, unsigned num, unsigned den) {
    std::uint64_t m = p + 2;
    if (oracle::trial_prime(m)) return true;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
        if (m % q) continue;
        std::uint64_t r = m / q;
        if (!oracle::trial_prime(r)) return false;
        auto pw = [](std::uint64_t x, unsigned e) {
            unsigned __int128 v = 1;
            for (unsigned i = 0; i < e; ++i) v *= x;
            return v;
        };
        return pw(q, den) > pw(p, num) && pw(r, den) > pw(p, num);
    }
    return false;
}

const std::vector<std::uint64_t> kChen100{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 47, 53, 59, 71, 83, 89};

}  // namespace

TEST_CASE("is_chen examples") {
    auto r5 = is_chen(5);
    REQUIRE(r5);
    CHECK(r5->kind == PartnerKind::prime);
    auto r7 = is_chen(7);
    REQUIRE(r7);
    CHECK(r7->kind == PartnerKind::semiprime);
    CHECK(r7->factors_of_p_plus_2 == std::vector<std::uint64_t>{3, 3});
    CHECK_FALSE(is_chen(43));
    CHECK_THROWS_AS(is_chen(9), HypothesisError);
    CHECK_THROWS_AS(is_chen(5, Rational(1)), DomainError);
}

TEST_CASE("Chen primes up to 100") {
    std::vector<std::uint64_t> got;
    for (std::uint64_t p = 2; p <= 100; ++p)
        if (oracle::trial_prime(p) && is_chen(p)) got.push_back(p);
    CHECK(got == kChen100);
    std::vector<std::uint64_t> partner_prime;
    for (auto p : got)
        if (is_chen(p)->kind == PartnerKind::prime) partner_prime.push_back(p);
    CHECK(partner_prime == std::vector<std::uint64_t>{3, 5, 11, 17, 29, 41, 59, 71});
    // 69 = 3 * 23 and 3 > 67^(1/10).
    CHECK_FALSE(is_chen(67));
    CHECK(is_chen(67, Rational(1, 10)));

    auto records = chen_records(100);
    REQUIRE(records.size() == kChen100.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].p == kChen100[i]);
        std::uint64_t prod = 1;
        for (auto f : records[i].factors_of_p_plus_2) prod *= f;
        CHECK(prod == records[i].p + 2);
    }
}

TEST_CASE("ChenSieve agrees with the trial-division oracle") {
    ChenSieve s(10000);
    ChenSieve loose(10000, Rational(1, 10));
    for (std::uint64_t p = 2; p <= 10000; ++p) {
        if (!oracle::trial_prime(p)) {
            CHECK_FALSE(s.is_chen(p));
            continue;
        }
        CHECK(s.is_chen(p) == oracle_chen(p, 3, 11));
        CHECK(s.is_chen(p) == is_chen(p).has_value());
        CHECK(loose.is_chen(p) == oracle_chen(p, 1, 10));
        // Raising the exponent never adds Chen primes.
        if (s.is_chen(p)) CHECK(loose.is_chen(p));
    }
}

TEST_CASE("density scan") {
    auto d10 = chen_density_scan(10);
    REQUIRE(!d10.intervals.empty());
    CHECK(d10.intervals[0].lo == 5);
    CHECK(d10.intervals[0].hi == 10);
    CHECK(d10.intervals[0].count == 1);  // only 7
    auto d100 = chen_density_scan(100);
    std::uint64_t total = 0;
    for (const auto& iv : d100.intervals) total += iv.count;
    CHECK(total == kChen100.size());
}

TEST_CASE("factoring budget from the environment") {
    setenv("SELBERG_BUDGET", "1000", 1);
    CHECK(factoring_budget() == 1000);
    CHECK_THROWS_AS(ChenSieve(5000), BudgetError);
    setenv("SELBERG_BUDGET", "abc", 1);
    CHECK_THROWS_AS(factoring_budget(), ParseError);
    unsetenv("SELBERG_BUDGET");
    CHECK(factoring_budget() == 10000000);
}

TEST_CASE("W-trick enumeration") {
    auto w3 = w_trick(3);
    CHECK(w3.W == 6);
    CHECK(w3.residues == std::vector<std::uint64_t>{5});
    auto w5 = w_trick(5);
    CHECK(w5.W == 30);
    CHECK(w5.residues == std::vector<std::uint64_t>{11, 17, 29});
    CHECK(w5.formula_printed == 6);
    const std::pair<double, std::size_t> sizes[] = {{3, 1}, {5, 3}, {7, 15}, {11, 135}, {13, 1485}};
    for (auto [t, n] : sizes) {
        auto wt = w_trick(t);
        CHECK(wt.residues.size() == n);
        CHECK(wt.formula_corrected == n);
        std::vector<std::uint64_t> brute;
        for (std::uint64_t b = 0; b < wt.W; ++b)
            if (std::gcd(b, wt.W) == 1 && std::gcd(b + 2, wt.W) == 1) brute.push_back(b);
        CHECK(wt.residues == brute);
    }
    CHECK(w_trick(6.5).W == 30);
    CHECK_THROWS_AS(w_trick(2), DomainError);
    CHECK_THROWS_AS(w_trick(37), RangeError);
}

TEST_CASE("select_residue") {
    auto w3 = w_trick(3);
    auto s = select_residue(100, w3);
    CHECK(s.b == 5);
    CHECK(w3.chosen_b == 5);
    CHECK_FALSE(s.X.empty());
    for (auto n : s.X) {
        CHECK(n >= 25);
        CHECK(n <= 50);
        CHECK(oracle_chen(6 * n + 5, 3, 11));
        CHECK(oracle::trial_prime(6 * n + 5));
    }
    auto w5 = w_trick(5);
    auto s5 = select_residue(10000, w5);
    CHECK(s5.X.size() > 0);
    CHECK(s5.X.size() == *std::max_element(s5.counts.begin(), s5.counts.end()));
}

TEST_CASE("direct 3-AP scan") {
    auto r = chen_ap3_direct(20);
    bool found = false;
    for (auto w : r.witnesses) found |= (w.p1 == 5 && w.p2 == 11 && w.p3 == 17);
    CHECK(found);

    const std::uint64_t N = 3000;
    auto big = chen_ap3_direct(N, 50);
    std::set<std::uint64_t> C;
    for (std::uint64_t p = 2; p <= N; ++p)
        if (oracle::trial_prime(p) && oracle_chen(p, 3, 11)) C.insert(p);
    std::uint64_t brute = 0;
    for (auto a : C)
        for (auto b : C)
            if (b > a && 2 * b - a <= N && C.count(2 * b - a)) ++brute;
    CHECK(big.triples == brute);
    CHECK(big.chen_count == C.size());
    CHECK(big.witnesses.size() == 50);
    for (auto w : big.witnesses) {
        CHECK(w.p1 < w.p2);
        CHECK(w.p2 - w.p1 == w.p3 - w.p2);
        CHECK(C.count(w.p1));
        CHECK(C.count(w.p2));
        CHECK(C.count(w.p3));
    }
}

TEST_CASE("transference-mode 3-AP count") {
    auto r = chen_ap3_transference(10000, 5);
    CHECK(r.X_size > 0);
    CHECK(r.direct_count > 0);
    CHECK(r.transference_count == doctest::Approx(double(r.direct_count)).epsilon(1e-6));
    CHECK(r.report.ap_count_f1 > 0);
    CHECK(r.report.f2_dominated);
    CHECK(r.modulus == 10007);
}

TEST_CASE("nu Fourier flatness") {
    auto w5 = w_trick(5);
    auto f = nu_fourier_flatness(w5, 10, 30030);
    CHECK(f.small_q_checked > 0);
    CHECK(f.small_q_vanish);
    CHECK(f.zero_deviation < 0.2);
    CHECK_THROWS_AS(nu_fourier_flatness(w5, 200, 30030), HypothesisError);
}
