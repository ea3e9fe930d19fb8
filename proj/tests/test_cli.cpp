#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(SYNCCODES_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), static_cast<int>(buf.size()), p)) r.out += buf.data();
    const int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    while (!r.out.empty() && r.out.back() == '\n') r.out.pop_back();
    return r;
}

std::string corrupt_output(const std::string& args) {
    const auto r = cli("corrupt " + args);
    REQUIRE(r.status == 0);
    return nlohmann::json::parse(r.out).at("output").get<std::string>();
}

}  // namespace

TEST_CASE("cli: edit4 round trip through a file and a single edit") {
    const std::string path = "cli_msg.txt";
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("0123012301233333\n", f);
    std::fclose(f);
    const auto enc = cli("encode --code edit4 --in " + path);
    REQUIRE(enc.status == 0);
    const auto dec = cli("decode --code edit4 --word " + enc.out);
    CHECK(dec.status == 0);
    CHECK(dec.out == "0123012301233333");
    const std::string y = corrupt_output("--model single-edit --seed 7 --q 4 --word " + enc.out);
    const auto fixed = cli("decode --code edit4 --m 16 --word " + y);
    CHECK(fixed.status == 0);
    CHECK(fixed.out == "0123012301233333");
    std::remove(path.c_str());
}

TEST_CASE("cli: delsub round trip emits a JSON list") {
    const auto enc = cli("encode --code delsub --word 1011001110");
    REQUIRE(enc.status == 0);
    const auto dec = cli("decode --code delsub --word " + enc.out);
    CHECK(dec.status == 0);
    CHECK(nlohmann::json::parse(dec.out) == nlohmann::json::array({"1011001110"}));
    const std::string y = corrupt_output("--model del-sub --pattern delsub:3:40:1 --word " + enc.out);
    const auto list = nlohmann::json::parse(cli("decode --code delsub --m 10 --word " + y).out);
    CHECK(std::find(list.begin(), list.end(), "1011001110") != list.end());
}

TEST_CASE("cli: deltrans desk round trip") {
    const auto enc = cli("encode --code deltrans --word 1");
    REQUIRE(enc.status == 0);
    CHECK(enc.out.size() == 20);
    const auto dec = cli("decode --code deltrans --word " + enc.out);
    CHECK(dec.out == "1");
    const std::string y = corrupt_output("--model del-or-trans --seed 3 --word " + enc.out);
    CHECK(cli("decode --code deltrans --word " + y).out == "1");
    const auto paper = cli("encode --code deltrans --profile paper --word 1");
    CHECK(paper.status == 1);
}

TEST_CASE("cli: corrupt is reproducible for a fixed seed") {
    const auto a = cli("corrupt --model single-edit --seed 7 --word 0110100110");
    const auto b = cli("corrupt --model single-edit --seed 7 --word 0110100110");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("input") == "0110100110");
    CHECK(j.at("seed") == 7);
    CHECK(nlohmann::json::parse(cli("corrupt --pattern trans:1 --word 0101").out).at("output") == "1001");
}

TEST_CASE("cli: verify-code reports list size 2 for delsub at n = 10") {
    const auto r = cli("verify-code --code delsub --n 10");
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("max_list_size") == 2);
    CHECK(j.at("schema_version") == 1);
    CHECK(cli("verify-code --code vt --n 8 --scope best").status == 0);
    const auto bad = cli("verify-code --code parity --n 5");
    CHECK(bad.status == 1);
    CHECK_FALSE(nlohmann::json::parse(bad.out).at("witnesses").empty());
}

TEST_CASE("cli: structured verbs") {
    auto j = nlohmann::json::parse(cli("sketch --code vt --word 0101").out);
    CHECK(j.at("a").at("value") == 6);
    CHECK(j.at("a").at("modulus") == 9);
    j = nlohmann::json::parse(cli("sketch --code delsub --word 011101000").out);
    CHECK(j.at("hr").at("value") == 6);
    j = nlohmann::json::parse(cli("search-params --code edit4 --n 6").out);
    CHECK(j.at("size").get<int>() >= 3);
    j = nlohmann::json::parse(cli("search-params --code deltrans --n 20").out);
    CHECK(j.at("inner_length") == 2 * j.at("L").get<int>() + 1);
    j = nlohmann::json::parse(cli("search-inner --model single-edit --len 4").out);
    CHECK(j.at("verified") == true);
    j = nlohmann::json::parse(cli("measure --code vt --n 8").out);
    CHECK(j.at("redundancy_bits").get<double>() <= 5.0);
    j = nlohmann::json::parse(cli("measure --code delsub --m 64").out);
    CHECK(j.at("tail_length") == 4 * 6 + 156);
    j = nlohmann::json::parse(cli("build-hash --cap 4").out);
    CHECK(j.at("cap") == 4);
    j = nlohmann::json::parse(cli("bench --code edit4 --sizes 32 64 --trials 3").out);
    CHECK(j.at("rows").size() == 2);
}

TEST_CASE("cli: exit codes") {
    CHECK(cli("").status == 2);
    CHECK(cli("encode").status == 2);
    CHECK(cli("frobnicate").status == 2);
    CHECK(cli("encode --code zip --word 01").status == 2);
    const auto bad = cli("decode --code edit4 --word 0123");
    CHECK(bad.status == 1);
    CHECK(nlohmann::json::parse(bad.out).contains("error"));
    const auto alpha = cli("encode --code delsub --word 0120");
    CHECK(alpha.status == 1);
    CHECK(nlohmann::json::parse(alpha.out).at("error") == "AlphabetMismatch");
}
