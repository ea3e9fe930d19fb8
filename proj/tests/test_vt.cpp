#include <random>

#include "doctest.h"
#include "synccodes/oracle.hpp"
#include "synccodes/sketches.hpp"
#include "synccodes/vt.hpp"
#include "util.hpp"

using namespace synccodes;

TEST_CASE("vt_correct: every residue, every single edit, n <= 8") {
    for (int n = 1; n <= 8; ++n) {
        const std::int64_t M = 2 * n + 1;
        oracle::for_each_word(2, n, [&](const Word& x) {
            const auto a = vt(x, M).value;
            for (const Word& y : images(x, ErrorModel::SingleEdit)) REQUIRE(vt_correct(y, n, a, M) == x);
        });
    }
}

TEST_CASE("vt_correct: deletions with modulus n + 1") {
    for (int n = 1; n <= 9; ++n) {
        oracle::for_each_word(2, n, [&](const Word& x) {
            const auto a = vt(x, n + 1).value;
            for (int d = 1; d <= n; ++d) REQUIRE(vt_correct(synccodes::apply(x, Deletion{d}), n, a, n + 1) == x);
        });
    }
}

TEST_CASE("vt_correct rejects impossible residues") {
    CHECK_THROWS_AS(vt_correct(W("0000"), 4, 5, 9), CodeError);
    CHECK_THROWS_AS(vt_correct(W("01"), 5, 0, 11), CodeError);
}

TEST_CASE("systematic VT: round trip under every single edit") {
    std::mt19937_64 rng(5);
    for (int k : {0, 1, 3, 8, 13, 20}) {
        const auto v = VtSystematic::for_payload(k);
        CHECK(v.payload_bits() >= k);
        for (int t = 0; t < 20; ++t) {
            std::vector<Symbol> bits(v.payload_bits());
            for (auto& b : bits) b = static_cast<Symbol>(rng() & 1);
            const Word x = v.encode(bits);
            REQUIRE(static_cast<int>(x.size()) == v.length());
            CHECK(vt(x, v.modulus()).value == 0);
            CHECK(v.extract(x) == bits);
            for (const Word& y : images(x, ErrorModel::SingleEdit)) REQUIRE(v.decode(y) == bits);
        }
    }
}
