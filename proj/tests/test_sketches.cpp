#include <random>

#include "doctest.h"
#include "synccodes/oracle.hpp"
#include "synccodes/sketches.hpp"
#include "util.hpp"

using namespace synccodes;

TEST_CASE("vt: worked values") {
    CHECK(vt(W("00000"), 11).value == 0);
    CHECK(vt(W("0101"), 13).value == 6);
    CHECK(vt(W("011"), 7).value == 5);
    CHECK(vt(W("011"), 7).modulus == 7);
}

TEST_CASE("weighted_vt: worked values") {
    const WeightFn w{{0, 1, 15, 16}};
    CHECK(weighted_vt(W("1203", 4), w, 129).value == 95);
    CHECK(weighted_vt(W("0000", 4), w, 129).value == 0);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        Word x(2, std::vector<Symbol>(rng() % 21));
        for (auto& c : x.s) c = static_cast<Symbol>(rng() & 1);
        CHECK(weighted_vt(x, identity_weights(2), 101) == vt(x, 101));
    }
    CHECK_THROWS_AS(weighted_vt(W("012", 3), w, 129), CodeError);
}

TEST_CASE("vt and weighted_vt match independent summation") {
    std::mt19937_64 rng(11);
    const WeightFn w{{0, 1, 19, 20}};
    for (int t = 0; t < 500; ++t) {
        Word x(4, std::vector<Symbol>(rng() % 21));
        for (auto& c : x.s) c = static_cast<Symbol>(rng() % 4);
        std::int64_t plain = 0, weighted = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            plain += static_cast<std::int64_t>(i + 1) * x.s[i];
            weighted += static_cast<std::int64_t>(i + 1) * w(x.s[i]);
        }
        CHECK(vt(x, 97).value == plain % 97);
        CHECK(weighted_vt(x, w, 97).value == weighted % 97);
    }
}

TEST_CASE("count_mod: worked values") {
    CHECK(count_mod(W("1203", 4), 0, 2).value == 1);
    CHECK(count_mod(W("0000"), 1, 2).value == 0);
    CHECK(count_mod(W("110101"), 1, 5).value == 4);
    CHECK(weight_mod(W("110101"), 5).value == 4);
}

TEST_CASE("run_sketches: worked values") {
    const auto a = run_sketches(W("011101000"));
    CHECK(a.f1r == ModularValue{20, 109});
    CHECK(a.f2r == ModularValue{44, 1297});
    CHECK(a.hr == ModularValue{6, 13});
    for (int n = 1; n <= 9; ++n) {
        const auto z = run_sketches(Word::zeros(2, n));
        CHECK(z.f1r.value == 0);
        CHECK(z.f2r.value == 0);
        // sentinel convention: 0 || 0^n || 1 has two runs
        CHECK(z.hr.value == 2);
        const auto o = run_sketches(Word(2, std::vector<Symbol>(n, 1)));
        CHECK(o.f1r.value == n);
        CHECK(o.f2r.value == 0);
        CHECK(o.hr.value == 2);
    }
}

TEST_CASE("run_sketches agree with run_string") {
    for (int n = 1; n <= 14; ++n) {
        oracle::for_each_word(2, n, [&](const Word& x) {
            const auto rs = run_string(x);
            std::int64_t s1 = 0, s2 = 0;
            for (int i = 1; i <= n; ++i) s1 += rs.r[i], s2 += static_cast<std::int64_t>(rs.r[i]) * (rs.r[i] - 1);
            const auto sk = run_sketches(x);
            REQUIRE(sk.f1r.value == s1 % (12 * n + 1));
            REQUIRE(sk.f2r.value == s2 % (16 * n * n + 1));
            REQUIRE(sk.hr.value == rs.runs() % 13);
        });
    }
}

TEST_CASE("parity sketches: worked values") {
    CHECK(g2(W("0011")).value == 1);
    CHECK(g2(W("000000")).value == 0);
    CHECK(parity_vt(W("0101"), 9).value == 5);
}

TEST_CASE("a 01 to 10 transposition lowers vt by exactly one") {
    for (int n = 2; n <= 12; ++n) {
        const std::int64_t N = 2 * n + 1;
        oracle::for_each_word(2, n, [&](const Word& x) {
            for (int k = 1; k < n; ++k) {
                if (!(x.s[k - 1] == 0 && x.s[k] == 1)) continue;
                const auto y = synccodes::apply(x, Transposition{k});
                REQUIRE(signed_diff(vt(y, N), vt(x, N)) == -1);
            }
        });
    }
}

TEST_CASE("run-sum difference bounds under one deletion and one substitution") {
    for (int n = 2; n <= 10; ++n) {
        oracle::for_each_word(2, n, [&](const Word& x) {
            const auto rx = run_string(x);
            std::int64_t a1 = 0, a2 = 0;
            for (int i = 1; i <= n; ++i) a1 += rx.r[i], a2 += static_cast<std::int64_t>(rx.r[i]) * (rx.r[i] - 1);
            for (const auto& p : patterns(x, ErrorModel::OneDelOneSub)) {
                const Word y = synccodes::apply(x, p);
                if (static_cast<int>(y.size()) != n - 1) continue;
                const auto ry = run_string(y);
                std::int64_t b1 = 0, b2 = 0;
                for (int i = 1; i <= n - 1; ++i) b1 += ry.r[i], b2 += static_cast<std::int64_t>(ry.r[i]) * (ry.r[i] - 1);
                REQUIRE(b1 - a1 >= -4 * n);
                REQUIRE(b1 - a1 <= 2 * n);
                REQUIRE(b2 - a2 >= -5 * n * n);
                REQUIRE(b2 - a2 <= 3 * n * n);
            }
        });
    }
}

TEST_CASE("signed representatives") {
    CHECK(signed_rep(6, 13) == 6);
    CHECK(signed_rep(7, 13) == -6);
    CHECK(signed_rep(-1, 13) == -1);
    CHECK(signed_rep(2, 4) == 2);
    CHECK(signed_diff(ModularValue{1, 17}, ModularValue{16, 17}) == 2);
    CHECK_THROWS_AS(signed_diff(ModularValue{1, 17}, ModularValue{1, 13}), CodeError);
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(6) == 3);
    CHECK(ceil_log2(8) == 3);
    CHECK(bits_for(17) == 5);
    CHECK(format({{"a", {1, 17}}}) == "a=1/17");
}
