// One line per acceptance criterion; exit status is non-zero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "synccodes/delsub.hpp"
#include "synccodes/deltrans.hpp"
#include "synccodes/edit4.hpp"
#include "synccodes/oracle.hpp"
#include "synccodes/sketches.hpp"

using namespace synccodes;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome vt_baseline() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = oracle::best_vt_bucket(8);
    const auto r = oracle::verify_words(b.words, ErrorModel::SingleEdit, 1, 8, 2);
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << b.target << " size=" << r.code_size << " max_list=" << r.max_list << " redundancy=" << r.redundancy_bits << " bits, "
       << s << " s";
    return {r.ok() && r.max_list == 1 && r.redundancy_bits <= 5.0 && s < 1.0, os.str()};
}

Outcome edit4_unique() {
    std::ostringstream os;
    bool pass = true;
    for (int n : {6, 8, 10}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto b = oracle::best_edit4_bucket(n);
        const auto r = oracle::verify_words(b.words, ErrorModel::SingleEdit, 1, n, 4);
        const double s = seconds_since(t0);
        pass = pass && r.ok() && (n != 10 || s < 300);
        os << "n=" << n << " size=" << r.code_size << " max_list=" << r.max_list << " (" << s << " s); ";
    }
    return {pass, os.str()};
}

Outcome edit4_size() {
    std::ostringstream os;
    bool pass = true;
    for (int n : {6, 8}) {
        const auto p = edit4::Params::for_length(n);
        const std::int64_t size = static_cast<std::int64_t>(oracle::best_edit4_bucket(n).words.size());
        const std::int64_t total = std::int64_t{1} << (2 * n);
        // size >= 7 * 4^n / (8 * 8 * N)
        const bool ok = size * 8 * 8 * p.N >= 7 * total;
        pass = pass && ok;
        os << "n=" << n << " size=" << size << " bound=" << 7.0 * total / (64.0 * p.N) << "; ";
    }
    return {pass, os.str()};
}

Outcome edit4_pipeline() {
    std::ostringstream os;
    std::int64_t decodes = 0, failures = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int m = 1; m <= 10; ++m) {
        const auto c = edit4::Codec::for_message(m);
        oracle::for_each_word(4, m, [&](const Word& z) {
            const Word x = c.encode(z);
            for (const Word& y : images(x, ErrorModel::SingleEdit)) {
                ++decodes;
                try {
                    if (c.decode(y) != z) ++failures;
                } catch (const CodeError&) {
                    ++failures;
                }
            }
        });
    }
    os << "exhaustive m<=10: " << decodes << " decodes, " << failures << " failures (" << seconds_since(t0) << " s); ";
    std::mt19937_64 rng(64);
    const auto c = edit4::Codec::for_message(64);
    std::int64_t rfail = 0;
    for (int t = 0; t < 10000; ++t) {
        Word z(4, std::vector<Symbol>(64));
        for (auto& s : z.s) s = static_cast<Symbol>(rng() % 4);
        const Word x = c.encode(z);
        const auto pats = patterns(x, ErrorModel::SingleEdit);
        const Word y = synccodes::apply(x, pats[rng() % pats.size()]);
        try {
            if (c.decode(y) != z) ++rfail;
        } catch (const CodeError&) {
            ++rfail;
        }
    }
    os << "m=64: 10000 seeded trials, " << rfail << " failures";
    return {failures == 0 && rfail == 0, os.str()};
}

Outcome delsub_list() {
    std::ostringstream os;
    bool pass = true;
    for (int n : {10, 12}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = oracle::verify_family("delsub", n);
        const auto best = oracle::verify_words(oracle::best_delsub_bucket(n).words, ErrorModel::OneDelOneSub, 2, n, 2);
        const double s = seconds_since(t0);
        pass = pass && r.ok() && r.max_list == 2 && s < 900;
        os << "n=" << n << " all targets: max_list=" << r.max_list << " violations=" << r.violations << ", best bucket size "
           << best.code_size << " max_list=" << best.max_list << " (" << s << " s); ";
    }
    return {pass, os.str()};
}

Outcome delsub_totality() {
    std::int64_t cases = 0, failures = 0;
    for (int n = 2; n <= 12; ++n) {
        const auto p = delsub::Params::for_length(n);
        oracle::for_each_word(2, n, [&](const Word& x) {
            const auto t = delsub::sketch(x, p);
            for (const auto& pat : patterns(x, ErrorModel::OneDelOneSub)) {
                const Word y = synccodes::apply(x, pat);
                ++cases;
                try {
                    const auto list = delsub::list_decode(y, t, p);
                    if (list.size() > 2 || std::find(list.begin(), list.end(), x) == list.end()) ++failures;
                } catch (const CodeError&) {
                    ++failures;
                }
            }
        });
    }
    std::ostringstream os;
    os << cases << " (codeword, pattern) cases over every target, n<=12, " << failures << " failures";
    return {failures == 0, os.str()};
}

Outcome delsub_slope() {
    std::vector<double> lx, ly;
    for (int k = 6; k <= 12; ++k) {
        lx.push_back(k);
        ly.push_back(delsub::Codec::for_message(1 << k).tail_length());
    }
    double c = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) c += ly[i] - 4 * lx[i];
    c /= lx.size();
    double worst = 0;
    std::ostringstream os;
    os << "|u| =";
    for (std::size_t i = 0; i < lx.size(); ++i) {
        worst = std::max(worst, std::abs(ly[i] - (4 * lx[i] + c)));
        os << " " << ly[i];
    }
    os << "; fit 4 log m + " << c << ", max residual " << worst;
    return {worst < 2.0, os.str()};
}

Outcome deltrans_desk() {
    using namespace deltrans;
    const auto r = oracle::verify_deltrans_desk();
    const auto code = DeskCode::build();
    const auto& p = code.params;
    const auto& h = code.hash;
    const auto domain = segment_domain(p.n, p.delta);
    // every family code, each decoded with its own sketches
    std::int64_t cases = 0, failures = 0, collisions = 0;
    const auto family = code_family(domain, p, h);
    for (const auto& fc : family) {
        if (fc.words.size() > 1) collisions += oracle::verify_words(fc.words, ErrorModel::OneDelOrOneTransposition, 1, p.n, 2).violations;
        for (const Word& x : fc.words) {
            const auto Hx = hash_multiset(segment(x), h);
            for (const Word& y : images(x, ErrorModel::OneDelOrOneTransposition)) {
                ++cases;
                try {
                    if (correct(y, fc.target, Hx, p, h) != x) ++failures;
                } catch (const CodeError&) {
                    ++failures;
                }
            }
        }
    }
    std::ostringstream os;
    os << "shipped code size " << r.code_size << ", violations " << r.violations << "; all " << family.size() << " final codes ("
       << domain.size() << " words): " << cases << " corrections, " << failures << " failures, " << collisions << " ball collisions";
    return {r.ok() && r.code_size >= 2 && failures == 0 && collisions == 0, os.str()};
}

Outcome deltrans_locate() {
    using namespace deltrans;
    const auto h = HashTable::build(DeskCode::kDelta, 0);
    const auto p = Params::derive("desk", DeskCode::kN, DeskCode::kDelta, h.range());
    std::int64_t calls = 0, violations = 0;
    int widest = 0;
    std::map<LocateCase, int> seen;
    for (const Word& x : segment_domain(p.n, p.delta)) {
        const auto s = sketch(x, p, h);
        const auto Hx = hash_multiset(segment(x), h);
        auto check = [&](const Word& y, const std::function<bool(const Window&)>& covers) {
            ++calls;
            try {
                const auto w = locate(y, s, Hx, p, h);
                ++seen[w.kind];
                widest = std::max(widest, w.size());
                if (!covers(w) || w.size() > p.L) ++violations;
            } catch (const CodeError&) {
                ++violations;
            }
        };
        for (int d = 1; d <= p.n; ++d) {
            const Word y = synccodes::apply(x, Deletion{d});
            // any deletion position producing the same y counts as the error position
            check(y, [&](const Window& w) {
                for (int e = std::max(1, w.lo); e <= std::min(p.n, w.hi); ++e)
                    if (synccodes::apply(x, Deletion{e}) == y) return true;
                return false;
            });
        }
        for (int k = 1; k < p.n; ++k) {
            if (x.s[k - 1] == x.s[k]) continue;
            check(synccodes::apply(x, Transposition{k}), [&](const Window& w) { return w.lo <= k && k + 1 <= w.hi; });
        }
    }
    std::ostringstream os;
    os << calls << " locate calls, " << violations << " violations, widest window " << widest << " <= bound " << p.L << "; cases";
    for (const auto& [k, v] : seen) os << " " << to_string(k) << "=" << v;
    return {violations == 0, os.str()};
}

Outcome lemma_statistics() {
    std::ostringstream os;
    bool pass = true;
    for (int n : {64, 256}) {
        const double f = oracle::regular_fraction(n, 100000, 2024 + n);
        pass = pass && f >= 7.0 / 8 - 0.02;
        os << "regular(n=" << n << ")=" << f << "; ";
    }
    for (int n : {1024, 4096}) {
        const auto pp = deltrans::PaperProfile::for_length(n);
        const double f = oracle::short_segment_probability(n, pp.delta, 10000, 7 + n);
        pass = pass && f >= 0.5 - 0.02;
        os << "short segments(n=" << n << ", delta=" << pp.delta << ")=" << f << "; ";
    }
    return {pass, os.str()};
}

Outcome inner_sketch() {
    std::int64_t cases = 0, failures = 0, ambiguous = 0;
    for (int Lp = 1; Lp <= 10; ++Lp) {
        const int width = bits_for(2 * static_cast<std::int64_t>(Lp) + 1);
        std::map<std::pair<std::vector<Symbol>, Word>, Word> seen;
        oracle::for_each_word(2, Lp, [&](const Word& z) {
            const auto f = deltrans::inner_sketch(z, Lp, width);
            for (const Word& y : images(z, ErrorModel::OneDelOrOneTransposition)) {
                ++cases;
                auto [it, fresh] = seen.emplace(std::make_pair(f, y), z);
                if (!fresh && it->second != z) ++ambiguous;
                try {
                    if (deltrans::inner_correct(y, f, Lp, width) != z) ++failures;
                } catch (const CodeError&) {
                    ++failures;
                }
            }
        });
    }
    std::ostringstream os;
    os << cases << " (z, y) cases for L'<=10, " << failures << " decode failures, " << ambiguous << " ambiguous (sketch, y) pairs";
    return {failures == 0 && ambiguous == 0, os.str()};
}

Outcome run_and_marker_lemmas() {
    std::int64_t checks = 0, bad = 0;
    for (int n = 1; n <= 12; ++n) {
        oracle::for_each_word(2, n, [&](const Word& x) {
            const int r = run_string(x).runs();
            for (int d = 1; d <= n; ++d) {
                const int rd = run_string(synccodes::apply(x, Deletion{d})).runs();
                ++checks;
                bad += !(rd == r || rd == r - 2);
            }
            for (int e = 1; e <= n; ++e) {
                const int rs = run_string(synccodes::apply(x, Substitution{e, static_cast<Symbol>(1 - x.s[e - 1])})).runs();
                ++checks;
                bad += !(rs == r || rs == r - 2 || rs == r + 2);
            }
        });
    }
    std::int64_t mchecks = 0, mbad = 0;
    for (int n = 4; n <= 16; ++n) {
        oracle::for_each_word(2, n - 4, [&](const Word& head) {
            Word x = head;
            x.s.insert(x.s.end(), {0, 0, 1, 1});
            const int lx = deltrans::marker_count(x);
            for (int d = 1; d <= n; ++d) {
                const auto c = deltrans::marker_change_deletion(x, d);
                const int dl = deltrans::marker_count(synccodes::apply(x, Deletion{d})) - lx;
                ++mchecks;
                mbad += !(c.created <= 1 && c.destroyed <= 1 && c.created * c.destroyed == 0 && c.created - c.destroyed == dl);
            }
            for (int k = 1; k < n; ++k) {
                const auto c = deltrans::marker_change_transposition(x, k);
                const int dl = deltrans::marker_count(synccodes::apply(x, Transposition{k})) - lx;
                ++mchecks;
                mbad += !(c.created <= 2 && c.destroyed <= 2 && c.created * c.destroyed == 0 && c.created - c.destroyed == dl &&
                          c.destroyed_consecutive && c.created_consecutive);
            }
        });
    }
    std::ostringstream os;
    os << checks << " run-count transitions (n<=12), " << bad << " counterexamples; " << mchecks << " marker cases (n<=16), " << mbad
       << " counterexamples";
    return {bad == 0 && mbad == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    // optional argument: run only criteria whose name contains it
    const std::string only = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"C1 binary VT baseline", vt_baseline},
        {"C2 edit4 unique decodability", edit4_unique},
        {"C3 edit4 code size", edit4_size},
        {"C4 edit4 pipeline", edit4_pipeline},
        {"C5 delsub list bound", delsub_list},
        {"C6 delsub decoder totality", delsub_totality},
        {"C7 delsub redundancy slope", delsub_slope},
        {"C8 deltrans desk profile", deltrans_desk},
        {"C9 deltrans locate window", deltrans_locate},
        {"C10 lemma statistics", lemma_statistics},
        {"C11 inner sketch", inner_sketch},
        {"C12 run-structure lemmas", run_and_marker_lemmas},
    };
    int failed = 0, ran = 0;
    for (const auto& [name, run] : criteria) {
        if (name.find(only) == std::string::npos) continue;
        ++ran;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
