#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "synccodes/delsub.hpp"
#include "synccodes/deltrans.hpp"
#include "synccodes/edit4.hpp"
#include "synccodes/oracle.hpp"
#include "synccodes/sketches.hpp"

using namespace synccodes;
using nlohmann::json;

namespace {

// Usage problems caught after parsing
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Input {
    std::string word;
    std::string in;

    void add(CLI::App* cmd) {
        cmd->add_option("--word,-w", word, "word as a digit string");
        cmd->add_option("--in,-i", in, "file holding the word; stdin when neither is given");
    }

    Word read(int q) const {
        std::string text = word;
        if (text.empty()) {
            if (!in.empty()) {
                std::ifstream f(in);
                if (!f) throw UsageError("cannot open " + in);
                text.assign(std::istreambuf_iterator<char>(f), {});
            } else {
                text.assign(std::istreambuf_iterator<char>(std::cin), {});
            }
        }
        return Word::parse(text, q);
    }
};

void need_code(const std::string& code, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (code == a) return;
    throw UsageError("unsupported --code " + code);
}

std::string tuple_json(const SketchTuple& t) {
    json j = json::object();
    for (const auto& [k, v] : t) j[k] = {{"value", v.value}, {"modulus", v.modulus}};
    return j.dump();
}

// message bits of the deltrans desk code, as a binary word
std::uint64_t message_index(const Word& z, int bits) {
    if (static_cast<int>(z.size()) != bits) throw CodeError(ErrorKind::IncompatibleLength, "deltrans desk message must have " + std::to_string(bits) + " bits");
    std::uint64_t v = 0;
    for (Symbol c : z.s) v = (v << 1) | c;
    return v;
}

Word index_word(std::uint64_t v, int bits) {
    Word z(2, std::vector<Symbol>(bits, 0));
    for (int i = bits - 1; i >= 0; --i, v >>= 1) z.s[i] = static_cast<Symbol>(v & 1);
    return z;
}

std::vector<int> delsub_lengths_for(int len) {
    std::vector<int> exact, shorter;
    for (int m = 1; m <= len; ++m) {
        const int l = delsub::Codec::for_message(m).length();
        if (l == len) exact.push_back(m);
        if (l == len + 1) shorter.push_back(m);
        if (l > len + 1) break;
    }
    exact.insert(exact.end(), shorter.begin(), shorter.end());
    return exact;
}

ErrorPattern parse_pattern(const std::string& text, const Word& x) {
    std::vector<int> v;
    std::string kind;
    std::stringstream ss(text);
    std::getline(ss, kind, ':');
    for (std::string part; std::getline(ss, part, ':');) v.push_back(std::stoi(part));
    auto want = [&](std::size_t k) {
        if (v.size() != k) throw UsageError("pattern " + kind + " takes " + std::to_string(k) + " fields");
    };
    if (kind == "none") return NoError{};
    if (kind == "del") return want(1), ErrorPattern{Deletion{v[0]}};
    if (kind == "ins") return want(2), ErrorPattern{Insertion{v[0], static_cast<Symbol>(v[1])}};
    if (kind == "sub") return want(2), ErrorPattern{Substitution{v[0], static_cast<Symbol>(v[1])}};
    if (kind == "trans") return want(1), ErrorPattern{Transposition{v[0]}};
    if (kind == "delsub") {
        want(3);
        if (v[1] < 1 || v[1] > static_cast<int>(x.size())) throw CodeError(ErrorKind::OutOfRange, "pattern position out of range");
        return make_del_sub(v[0], v[1], static_cast<Symbol>(v[2]));
    }
    throw UsageError("unknown pattern kind " + kind);
}

double elapsed_ns(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synccodes: codecs and brute-force oracles for synchronization errors"};
    app.require_subcommand(1);

    std::string code = "edit4", model_name = "single-edit", pattern, profile = "desk", out;
    std::uint64_t seed = 1;
    int m = 0, n = 0, len = 0, q = 2, cap = 8, delta = deltrans::DeskCode::kDelta, trials = 200;
    std::int64_t range = 0;
    std::vector<int> sizes;
    Input input;

    auto* enc = app.add_subcommand("encode", "encode a message");
    enc->add_option("--code,-c", code, "edit4 | delsub | deltrans")->required();
    enc->add_option("--profile", profile, "deltrans profile: desk | paper");
    input.add(enc);

    auto* dec = app.add_subcommand("decode", "decode a received word");
    dec->add_option("--code,-c", code, "edit4 | delsub | deltrans")->required();
    dec->add_option("--m", m, "message length; inferred from the received length when omitted");
    dec->add_option("--profile", profile, "deltrans profile: desk | paper");
    input.add(dec);

    auto* cor = app.add_subcommand("corrupt", "apply one error pattern");
    cor->add_option("--model", model_name, "single-edit | del-sub | del-or-trans");
    cor->add_option("--seed", seed, "seed for the uniform pattern draw");
    cor->add_option("--pattern", pattern, "explicit pattern: del:d, ins:p:c, sub:e:c, trans:k, delsub:d:e:c, none");
    cor->add_option("--q", q, "alphabet size; 0 infers it from the word");
    input.add(cor);

    auto* sk = app.add_subcommand("sketch", "print the sketch tuple of a word");
    sk->add_option("--code,-c", code, "vt | edit4 | delsub | deltrans")->required();
    input.add(sk);

    auto* ver = app.add_subcommand("verify-code", "exhaustive list-size check");
    ver->add_option("--code,-c", code, "vt | edit4 | delsub | deltrans | parity")->required();
    ver->add_option("--n", n, "code length (ignored for deltrans)");
    std::string scope = "family";
    ver->add_option("--scope", scope, "family: every sketch target; best: the largest bucket only");

    auto* sp = app.add_subcommand("search-params", "best sketch target, or derived deltrans parameters");
    sp->add_option("--code,-c", code, "vt | edit4 | delsub | deltrans")->required();
    sp->add_option("--n", n, "code length")->required();
    sp->add_option("--delta", delta, "deltrans segment cap");
    sp->add_option("--profile", profile, "deltrans profile: desk | paper");

    auto* si = app.add_subcommand("search-inner", "greedy inner code with verification");
    si->add_option("--model", model_name, "single-edit | del-sub | del-or-trans");
    si->add_option("--len", len, "inner length")->required();
    si->add_option("--q", q, "alphabet size");

    auto* me = app.add_subcommand("measure", "redundancy of the best bucket or of a codec");
    me->add_option("--code,-c", code, "vt | edit4 | delsub")->required();
    me->add_option("--n", n, "code length for the bucket search");
    me->add_option("--m", m, "message length for the codec");

    auto* bh = app.add_subcommand("build-hash", "greedy segment hash table");
    bh->add_option("--cap", cap, "longest hashed segment");
    bh->add_option("--range", range, "hash range; 0 uses the colors the greedy needs");
    bh->add_option("--out,-o", out, "output file; stdout when omitted");

    auto* be = app.add_subcommand("bench", "encode/decode wall time across lengths");
    be->add_option("--code,-c", code, "edit4 | delsub")->required();
    be->add_option("--sizes", sizes, "message lengths")->expected(1, -1);
    be->add_option("--trials", trials, "messages per length");
    be->add_option("--seed", seed, "seed for messages and edits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (enc->parsed()) {
            need_code(code, {"edit4", "delsub", "deltrans"});
            if (code == "edit4") {
                const Word z = input.read(4);
                std::cout << edit4::Codec::for_message(static_cast<int>(z.size())).encode(Word(4, z.s)).str() << "\n";
            } else if (code == "delsub") {
                const Word z = input.read(2);
                std::cout << delsub::Codec::for_message(static_cast<int>(z.size())).encode(z).str() << "\n";
            } else {
                if (profile != "desk") throw CodeError(ErrorKind::InvalidParams, "only the desk profile has an enumerable code");
                const auto c = deltrans::DeskCode::build();
                std::cout << c.encode(message_index(input.read(2), c.message_bits())).str() << "\n";
            }
        } else if (dec->parsed()) {
            need_code(code, {"edit4", "delsub", "deltrans"});
            if (code == "edit4") {
                const Word y = input.read(4);
                std::vector<int> ms = m > 0 ? std::vector<int>{m} : edit4::Codec::lengths_for(static_cast<int>(y.size()));
                std::optional<CodeError> last;
                for (int mm : ms) {
                    try {
                        std::cout << edit4::Codec::for_message(mm).decode(Word(4, y.s)).str() << "\n";
                        return 0;
                    } catch (const CodeError& e) {
                        last = e;
                    }
                }
                throw last ? *last : CodeError(ErrorKind::IncompatibleLength, "no message length fits the received word");
            } else if (code == "delsub") {
                const Word y = input.read(2);
                std::vector<int> ms = m > 0 ? std::vector<int>{m} : delsub_lengths_for(static_cast<int>(y.size()));
                std::optional<CodeError> last;
                for (int mm : ms) {
                    try {
                        json list = json::array();
                        for (const Word& z : delsub::Codec::for_message(mm).decode(y)) list.push_back(z.str());
                        std::cout << list.dump() << "\n";
                        return 0;
                    } catch (const CodeError& e) {
                        last = e;
                    }
                }
                throw last ? *last : CodeError(ErrorKind::IncompatibleLength, "no message length fits the received word");
            } else {
                if (profile != "desk") throw CodeError(ErrorKind::InvalidParams, "only the desk profile has an enumerable code");
                const auto c = deltrans::DeskCode::build();
                const Word x = c.decode(input.read(2));
                const auto it = std::find(c.words.begin(), c.words.end(), x);
                if (it == c.words.end()) throw CodeError(ErrorKind::DecodeFailure, "decoded word is not a codeword");
                std::cout << index_word(static_cast<std::uint64_t>(it - c.words.begin()), c.message_bits()).str() << "\n";
            }
        } else if (cor->parsed()) {
            const Word x = input.read(q);
            const ErrorModel model = parse_model(model_name);
            ErrorPattern p;
            if (!pattern.empty()) {
                p = parse_pattern(pattern, x);
            } else {
                const auto all = patterns(x, model);
                std::mt19937_64 rng(seed);
                p = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
            }
            const Word y = synccodes::apply(x, p);
            std::cout << json{{"input", x.str()}, {"output", y.str()}, {"pattern", describe(p)}, {"model", to_string(model)}, {"seed", seed}}.dump() << "\n";
        } else if (sk->parsed()) {
            need_code(code, {"vt", "edit4", "delsub", "deltrans"});
            if (code == "edit4") {
                const Word x = input.read(4);
                const auto p = edit4::Params::for_length(static_cast<int>(x.size()));
                std::cout << tuple_json(edit4::to_tuple(edit4::sketch(x, p), p)) << "\n";
            } else {
                const Word x = input.read(2);
                const int nn = static_cast<int>(x.size());
                if (code == "vt") {
                    std::cout << tuple_json({{"a", vt(x, 2 * static_cast<std::int64_t>(nn) + 1)}}) << "\n";
                } else if (code == "delsub") {
                    const auto p = delsub::Params::for_length(nn);
                    std::cout << tuple_json(delsub::to_tuple(delsub::sketch(x, p), p)) << "\n";
                } else {
                    const auto h = deltrans::HashTable::build(deltrans::DeskCode::kDelta, 0);
                    const auto p = deltrans::Params::derive("desk", nn, deltrans::DeskCode::kDelta, h.range());
                    std::cout << tuple_json(deltrans::to_tuple(deltrans::sketch(x, p, h), p)) << "\n";
                }
            }
        } else if (ver->parsed()) {
            need_code(code, {"vt", "edit4", "delsub", "deltrans", "parity"});
            oracle::VerificationReport r;
            if (code == "deltrans") {
                r = oracle::verify_deltrans_desk();
            } else if (code == "parity") {
                // negative control: even-weight words do not survive deletions
                r = oracle::verify_code([](const Word& x) { return weight_mod(x, 2).value == 0; }, ErrorModel::SingleEdit, 1, n, 2);
            } else if (scope == "best") {
                const auto b = oracle::best_bucket(code, n);
                r = oracle::verify_words(b.words, oracle::family_model(code), oracle::family_list_bound(code), n, code == "edit4" ? 4 : 2);
            } else if (scope == "family") {
                r = oracle::verify_family(code, n);
            } else {
                throw UsageError("--scope must be family or best");
            }
            std::cout << r.to_json() << "\n";
            return r.ok() ? 0 : 1;
        } else if (sp->parsed()) {
            need_code(code, {"vt", "edit4", "delsub", "deltrans"});
            if (code == "deltrans") {
                if (profile == "paper") {
                    const auto pp = deltrans::PaperProfile::for_length(n);
                    std::cout << json{{"profile", "paper"}, {"n", n}, {"delta", pp.delta}, {"m", deltrans::to_string(pp.m)},
                                      {"L_mod", deltrans::to_string(pp.L_mod)}, {"L", deltrans::to_string(pp.L)}}
                                     .dump()
                              << "\n";
                } else {
                    const auto h = deltrans::HashTable::build(delta, 0);
                    const auto p = deltrans::Params::derive("desk", n, delta, h.range());
                    json fam1 = json::array(), fam2 = json::array();
                    for (const auto& iv : p.family1) fam1.push_back({iv.a, iv.b});
                    for (const auto& iv : p.family2) fam2.push_back({iv.a, iv.b});
                    std::cout << json{{"profile", "desk"}, {"n", n}, {"delta", delta}, {"m", p.m}, {"L_mod", p.L_mod}, {"L", p.L},
                                      {"inner_length", p.Lp}, {"fhat_bits", p.fhat_bits()}, {"family1", fam1}, {"family2", fam2},
                                      {"scan_depth", {p.k_del_minus, p.k_del_plus, p.k_trans_minus, p.k_trans_plus, p.k_two}}}
                                     .dump()
                              << "\n";
                }
            } else {
                const auto all = oracle::all_buckets(code, n);
                const auto best = oracle::best_bucket(code, n);
                const int qq = code == "edit4" ? 4 : 2;
                std::cout << json{{"code", code}, {"n", n}, {"buckets", all.size()}, {"target", best.target}, {"size", best.words.size()},
                                  {"redundancy_bits", oracle::redundancy_bits(best.words.size(), n, qq)}}
                                 .dump()
                          << "\n";
            }
        } else if (si->parsed()) {
            const ErrorModel model = parse_model(model_name);
            const auto words = oracle::search_inner_code(model, len, q);
            const auto r = oracle::verify_words(words, model, 1, len, q);
            json w = json::array();
            for (const auto& x : words) w.push_back(x.str());
            std::cout << json{{"schema_version", oracle::kReportSchema}, {"model", to_string(model)}, {"len", len}, {"q", q},
                              {"size", words.size()}, {"words", w}, {"verified", r.ok()}, {"max_list_size", r.max_list}}
                             .dump()
                      << "\n";
            return r.ok() ? 0 : 1;
        } else if (me->parsed()) {
            need_code(code, {"vt", "edit4", "delsub"});
            if (m > 0) {
                if (code == "vt") throw UsageError("--m applies to the edit4 and delsub codecs");
                json j{{"code", code}, {"m", m}};
                if (code == "edit4") {
                    const auto c = edit4::Codec::for_message(m);
                    j["length"] = c.length();
                    j["tail_length"] = c.tail_length();
                    j["redundancy_bits"] = 2 * (c.length() - m);
                } else {
                    const auto c = delsub::Codec::for_message(m);
                    j["length"] = c.length();
                    j["tail_length"] = c.tail_length();
                    j["redundancy_bits"] = c.tail_length();
                }
                std::cout << j.dump() << "\n";
            } else {
                std::cout << oracle::measure(code, n).to_json() << "\n";
            }
        } else if (bh->parsed()) {
            const auto h = deltrans::HashTable::build(cap, range);
            if (out.empty()) {
                std::cout << h.to_json() << "\n";
            } else {
                std::ofstream f(out);
                if (!f) throw UsageError("cannot write " + out);
                f << h.to_json() << "\n";
                std::cout << json{{"cap", h.cap()}, {"range", h.range()}, {"colors_used", h.colors_used()}, {"out", out}}.dump() << "\n";
            }
        } else if (be->parsed()) {
            need_code(code, {"edit4", "delsub"});
            if (sizes.empty()) sizes = {64, 128, 256, 512, 1024, 2048};
            const int qq = code == "edit4" ? 4 : 2;
            std::mt19937_64 rng(seed);
            json rows = json::array();
            std::vector<double> lx, ly;
            for (int mm : sizes) {
                double enc_ns = 0, dec_ns = 0;
                std::uniform_int_distribution<int> sym(0, qq - 1);
                for (int t = 0; t < trials; ++t) {
                    Word z(qq, std::vector<Symbol>(mm));
                    for (auto& c : z.s) c = static_cast<Symbol>(sym(rng));
                    if (code == "edit4") {
                        const auto c = edit4::Codec::for_message(mm);
                        auto t0 = std::chrono::steady_clock::now();
                        const Word x = c.encode(z);
                        enc_ns += elapsed_ns(t0);
                        const Word y = synccodes::apply(x, Deletion{static_cast<int>(rng() % x.size()) + 1});
                        t0 = std::chrono::steady_clock::now();
                        if (c.decode(y) != z) throw CodeError(ErrorKind::DecodeFailure, "bench decode mismatch");
                        dec_ns += elapsed_ns(t0);
                    } else {
                        const auto c = delsub::Codec::for_message(mm);
                        auto t0 = std::chrono::steady_clock::now();
                        const Word x = c.encode(z);
                        enc_ns += elapsed_ns(t0);
                        const Word y = synccodes::apply(x, Deletion{static_cast<int>(rng() % x.size()) + 1});
                        t0 = std::chrono::steady_clock::now();
                        const auto list = c.decode(y);
                        if (std::find(list.begin(), list.end(), z) == list.end()) throw CodeError(ErrorKind::DecodeFailure, "bench decode mismatch");
                        dec_ns += elapsed_ns(t0);
                    }
                }
                rows.push_back({{"m", mm}, {"encode_ns", enc_ns / trials}, {"decode_ns", dec_ns / trials}});
                lx.push_back(std::log(static_cast<double>(mm)));
                ly.push_back(std::log(std::max(1.0, dec_ns / trials)));
            }
            // least-squares slope of log decode time against log m
            double slope = 0;
            if (lx.size() >= 2) {
                double mx = 0, my = 0;
                for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
                mx /= lx.size();
                my /= ly.size();
                double sxy = 0, sxx = 0;
                for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
                slope = sxx > 0 ? sxy / sxx : 0;
            }
            std::cout << json{{"code", code}, {"seed", seed}, {"trials", trials}, {"rows", rows}, {"decode_loglog_slope", slope}}.dump() << "\n";
        }
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const CodeError& e) {
        std::cout << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
