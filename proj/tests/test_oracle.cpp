#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "synccodes/oracle.hpp"
#include "synccodes/sketches.hpp"
#include "util.hpp"

using namespace synccodes;

TEST_CASE("verify_code: VT at n = 8 decodes one edit") {
    const auto b = oracle::best_vt_bucket(8);
    const auto r = oracle::verify_words(b.words, ErrorModel::SingleEdit, 1, 8, 2);
    CHECK(r.ok());
    CHECK(r.max_list == 1);
    CHECK(r.redundancy_bits <= 5.0);
    const auto a = vt(b.words.front(), 17).value;
    const auto direct = oracle::verify_code([a](const Word& x) { return vt(x, 17).value == a; }, ErrorModel::SingleEdit, 1, 8, 2);
    CHECK(direct.code_size == r.code_size);
    CHECK(direct.ok());
}

TEST_CASE("verify_code: edit4 best bucket at n = 8") {
    const auto b = oracle::best_edit4_bucket(8);
    const auto r = oracle::verify_words(b.words, ErrorModel::SingleEdit, 1, 8, 4);
    CHECK(r.ok());
    CHECK(r.max_list == 1);
}

TEST_CASE("verify_family: delsub at n = 10 reaches list size 2") {
    const auto r = oracle::verify_family("delsub", 10);
    CHECK(r.ok());
    CHECK(r.max_list == 2);
}

TEST_CASE("negative control: even-weight code under single edits") {
    const auto r = oracle::verify_code([](const Word& x) { return weight_mod(x, 2).value == 0; }, ErrorModel::SingleEdit, 1, 6, 2);
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.witnesses.front().sources.size() >= 2);
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j.at("schema_version") == oracle::kReportSchema);
    CHECK(j.at("violations").get<std::size_t>() == r.violations);
    CHECK(j.at("witnesses").size() == r.witnesses.size());
}

TEST_CASE("forward counting agrees with error balls") {
    for (int n = 3; n <= 6; ++n) {
        for (auto model : {ErrorModel::SingleEdit, ErrorModel::OneDelOneSub, ErrorModel::OneDelOrOneTransposition}) {
            std::vector<Word> code;
            oracle::for_each_word(2, n, [&](const Word& x) {
                if (vt(x, n + 1).value == 0) code.push_back(x);
            });
            const auto r = oracle::verify_words(code, model, 1, n, 2);
            std::size_t worst = 0;
            for (auto len : image_lengths(model, n)) {
                oracle::for_each_word(2, static_cast<int>(len), [&](const Word& y) {
                    std::size_t hits = 0;
                    for (const Word& x : error_ball(y, model, n, 2)) hits += std::binary_search(code.begin(), code.end(), x);
                    worst = std::max(worst, hits);
                });
            }
            CHECK(worst == r.max_list);
        }
    }
}

TEST_CASE("verify_deltrans_desk: shipped code is clean") {
    const auto r = oracle::verify_deltrans_desk();
    CHECK(r.ok());
    CHECK(r.n == 20);
    CHECK(r.code_size >= 2);
}

TEST_CASE("size guards") {
    CHECK_THROWS_AS(oracle::verify_code([](const Word&) { return true; }, ErrorModel::SingleEdit, 1, 17, 2), CodeError);
    CHECK_THROWS_AS(oracle::search_inner_code(ErrorModel::SingleEdit, 17), CodeError);
}

TEST_CASE("search_inner_code: greedy codes pass verification") {
    const auto a = oracle::search_inner_code(ErrorModel::SingleEdit, 4);
    CHECK(a.size() >= 2);
    CHECK(oracle::verify_words(a, ErrorModel::SingleEdit, 1, 4, 2).ok());
    const auto b = oracle::search_inner_code(ErrorModel::OneDelOneSub, 6);
    CHECK(oracle::verify_words(b, ErrorModel::OneDelOneSub, 1, 6, 2).ok());
    const auto c = oracle::search_inner_code(ErrorModel::SingleEdit, 0);
    CHECK(c == std::vector<Word>{Word(2)});
    for (int len = 1; len <= 8; ++len)
        for (auto model : {ErrorModel::SingleEdit, ErrorModel::OneDelOneSub, ErrorModel::OneDelOrOneTransposition})
            CHECK(oracle::verify_words(oracle::search_inner_code(model, len), model, 1, len, 2).ok());
    CHECK(oracle::verify_words(oracle::search_inner_code(ErrorModel::SingleEdit, 4, 4), ErrorModel::SingleEdit, 1, 4, 4).ok());
}

TEST_CASE("measure_redundancy") {
    CHECK(oracle::measure_redundancy([](const Word&) { return true; }, 6, 2) == 0.0);
    CHECK(oracle::measure_redundancy([](const Word&) { return true; }, 3, 4) == 0.0);
    const auto m = oracle::measure("vt", 8);
    CHECK(m.redundancy_bits <= 5.0);
    CHECK(m.size == 16);
    CHECK(std::isinf(oracle::redundancy_bits(0, 4, 2)));
    const auto e = oracle::measure("edit4", 8);
    CHECK(e.q == 4);
    CHECK(e.size >= 25);
}

TEST_CASE("sampling is reproducible") {
    CHECK(oracle::regular_fraction(64, 2000, 9) == oracle::regular_fraction(64, 2000, 9));
    CHECK(oracle::short_segment_probability(256, 64, 500, 3) == oracle::short_segment_probability(256, 64, 500, 3));
    CHECK(oracle::short_segment_probability(64, 3, 100, 1) == 0.0);
}
