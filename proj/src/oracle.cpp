#include "synccodes/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "json.hpp"
#include "synccodes/deltrans.hpp"
#include "synccodes/delsub.hpp"
#include "synccodes/edit4.hpp"
#include "synccodes/sketches.hpp"

namespace synccodes::oracle {

namespace {

void check_alphabet(int q) {
    if (q < 2 || q > 10) throw CodeError(ErrorKind::Alphabet, "alphabet size must be in [2, 10]");
}

// Forward counting only walks the images of the given words, so the length may exceed the enumeration cap.
void guard_forward(const std::vector<Word>& code, int n, int q) {
    check_alphabet(q);
    const double work = static_cast<double>(code.size()) * q * (n + 1.0) * (n + 1.0);
    if (n < 0 || work > 4.3e9) throw CodeError(ErrorKind::SizeGuard, "too many error images to tally");
}

void guard(int n, int q) {
    if (n < 0 || n > kMaxLength) throw CodeError(ErrorKind::SizeGuard, "exhaustive oracle needs n <= 16");
    if (q < 2 || q > 10) throw CodeError(ErrorKind::Alphabet, "alphabet size must be in [2, 10]");
    if (std::pow(static_cast<double>(q), n) > 4.3e9) throw CodeError(ErrorKind::SizeGuard, "q^n too large to enumerate");
}

nlohmann::json word_json(const Word& w) { return w.str(); }

}  // namespace

void for_each_word(int q, int n, const std::function<void(const Word&)>& f) {
    Word x(q, std::vector<Symbol>(n, 0));
    while (true) {
        f(x);
        int i = n - 1;
        while (i >= 0 && x.s[i] == q - 1) x.s[i--] = 0;
        if (i < 0) return;
        ++x.s[i];
    }
}

double redundancy_bits(std::size_t code_size, int n, int q) {
    if (code_size == 0) return std::numeric_limits<double>::infinity();
    return n * std::log2(static_cast<double>(q)) - std::log2(static_cast<double>(code_size));
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kReportSchema;
    j["model"] = synccodes::to_string(model);
    j["n"] = n;
    j["q"] = q;
    j["code_size"] = code_size;
    j["redundancy_bits"] = std::isfinite(redundancy_bits) ? nlohmann::json(redundancy_bits) : nlohmann::json(nullptr);
    j["list_bound"] = list_bound;
    j["max_list_size"] = max_list;
    j["violations"] = violations;
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : witnesses) {
        nlohmann::json e;
        e["y"] = word_json(w.y);
        e["sources"] = nlohmann::json::array();
        for (const auto& s : w.sources) e["sources"].push_back(word_json(s));
        j["witnesses"].push_back(e);
    }
    j["runtime_ms"] = runtime_ms;
    return j.dump();
}

VerificationReport verify_words(const std::vector<Word>& code, ErrorModel model, std::size_t list_bound, int n, int q,
                                std::size_t max_witnesses) {
    guard_forward(code, n, q);
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport r;
    r.model = model;
    r.n = n;
    r.q = q;
    r.list_bound = list_bound;
    std::vector<Word> sorted = code;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    r.code_size = sorted.size();
    r.redundancy_bits = redundancy_bits(sorted.size(), n, q);
    std::map<Word, std::vector<std::uint32_t>> hits;
    for (std::uint32_t i = 0; i < sorted.size(); ++i) {
        if (static_cast<int>(sorted[i].size()) != n || sorted[i].q != q)
            throw CodeError(ErrorKind::IncompatibleLength, "codeword does not match n and q");
        for (const Word& y : images(sorted[i], model)) hits[y].push_back(i);
    }
    for (const auto& [y, idx] : hits) {
        r.max_list = std::max(r.max_list, idx.size());
        if (idx.size() <= list_bound) continue;
        ++r.violations;
        if (r.witnesses.size() < max_witnesses) {
            Witness w{y, {}};
            for (auto i : idx) w.sources.push_back(sorted[i]);
            r.witnesses.push_back(std::move(w));
        }
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

VerificationReport verify_code(const Membership& in_code, ErrorModel model, std::size_t list_bound, int n, int q) {
    guard(n, q);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Word> code;
    for_each_word(q, n, [&](const Word& x) {
        if (in_code(x)) code.push_back(x);
    });
    VerificationReport r = verify_words(code, model, list_bound, n, q);
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<Word> search_inner_code(ErrorModel model, int len, int q) {
    guard(len, q);
    std::vector<Word> code;
    std::set<Word> covered;
    for_each_word(q, len, [&](const Word& x) {
        const auto im = images(x, model);
        for (const Word& y : im)
            if (covered.count(y)) return;
        covered.insert(im.begin(), im.end());
        code.push_back(x);
    });
    return code;
}

namespace {

template <class Key>
std::vector<Bucket> collect(const std::map<Key, std::vector<Word>>& buckets, const std::function<std::string(const Key&)>& name) {
    std::vector<Bucket> out;
    out.reserve(buckets.size());
    for (const auto& [k, w] : buckets) out.push_back({name(k), w});
    return out;
}

}  // namespace

std::vector<Bucket> all_buckets(const std::string& family, int n) {
    if (family == "vt") {
        guard(n, 2);
        const std::int64_t M = 2 * static_cast<std::int64_t>(n) + 1;
        std::map<std::int64_t, std::vector<Word>> buckets;
        for_each_word(2, n, [&](const Word& x) { buckets[vt(x, M).value].push_back(x); });
        return collect<std::int64_t>(buckets, [M](const std::int64_t& a) { return format({{"a", {a, M}}}); });
    }
    if (family == "edit4") {
        guard(n, 4);
        const auto p = edit4::Params::for_length(n);
        std::map<edit4::Sketch, std::vector<Word>> buckets;
        for_each_word(4, n, [&](const Word& x) {
            if (edit4::is_regular(x, n)) buckets[edit4::sketch(x, p)].push_back(x);
        });
        return collect<edit4::Sketch>(buckets, [&p](const edit4::Sketch& s) { return format(edit4::to_tuple(s, p)); });
    }
    if (family == "delsub") {
        guard(n, 2);
        const auto p = delsub::Params::for_length(n);
        std::map<delsub::Sketch, std::vector<Word>> buckets;
        for_each_word(2, n, [&](const Word& x) { buckets[delsub::sketch(x, p)].push_back(x); });
        return collect<delsub::Sketch>(buckets, [&p](const delsub::Sketch& s) { return format(delsub::to_tuple(s, p)); });
    }
    throw CodeError(ErrorKind::InvalidParams, "no bucket search for code family " + family);
}

Bucket best_bucket(const std::string& family, int n) {
    auto all = all_buckets(family, n);
    if (all.empty()) return {};
    std::size_t best = 0;
    for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i].words.size() > all[best].words.size()) best = i;
    return std::move(all[best]);
}

Bucket best_vt_bucket(int n) { return best_bucket("vt", n); }
Bucket best_edit4_bucket(int n) { return best_bucket("edit4", n); }
Bucket best_delsub_bucket(int n) { return best_bucket("delsub", n); }

ErrorModel family_model(const std::string& family) {
    if (family == "vt" || family == "edit4") return ErrorModel::SingleEdit;
    if (family == "delsub") return ErrorModel::OneDelOneSub;
    if (family == "deltrans") return ErrorModel::OneDelOrOneTransposition;
    throw CodeError(ErrorKind::InvalidParams, "unknown code family " + family);
}

std::size_t family_list_bound(const std::string& family) { return family == "delsub" ? 2 : 1; }

VerificationReport verify_family(const std::string& family, int n) {
    const auto t0 = std::chrono::steady_clock::now();
    const ErrorModel model = family_model(family);
    const std::size_t bound = family_list_bound(family);
    const int q = family == "edit4" ? 4 : 2;
    VerificationReport total;
    total.model = model;
    total.n = n;
    total.q = q;
    total.list_bound = bound;
    for (const auto& b : all_buckets(family, n)) {
        total.code_size = std::max(total.code_size, b.words.size());
        if (b.words.size() < 2) {
            total.max_list = std::max<std::size_t>(total.max_list, 1);
            continue;
        }
        const auto r = verify_words(b.words, model, bound, n, q);
        total.max_list = std::max(total.max_list, r.max_list);
        total.violations += r.violations;
        for (const auto& w : r.witnesses)
            if (total.witnesses.size() < 8) total.witnesses.push_back(w);
    }
    total.redundancy_bits = redundancy_bits(total.code_size, n, q);
    total.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return total;
}

VerificationReport verify_deltrans_desk() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto code = deltrans::DeskCode::build();
    const int n = code.params.n;
    VerificationReport r = verify_words(code.words, ErrorModel::OneDelOrOneTransposition, 1, n, 2);
    for (const Word& x : code.words) {
        for (const Word& y : images(x, ErrorModel::OneDelOrOneTransposition)) {
            bool good = false;
            try {
                good = code.decode(y) == x;
            } catch (const CodeError&) {
            }
            if (good) continue;
            ++r.violations;
            if (r.witnesses.size() < 8) r.witnesses.push_back({y, {x}});
        }
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

double measure_redundancy(const Membership& in_code, int n, int q) {
    guard(n, q);
    std::size_t size = 0;
    for_each_word(q, n, [&](const Word& x) { size += in_code(x) ? 1 : 0; });
    return redundancy_bits(size, n, q);
}

std::string Measurement::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kReportSchema;
    j["family"] = family;
    j["n"] = n;
    j["q"] = q;
    j["target"] = target;
    j["size"] = size;
    j["redundancy_bits"] = redundancy_bits;
    return j.dump();
}

Measurement measure(const std::string& family, int n) {
    const Bucket b = best_bucket(family, n);
    Measurement m;
    m.family = family;
    m.n = n;
    m.q = family == "edit4" ? 4 : 2;
    m.target = b.target;
    m.size = b.words.size();
    m.redundancy_bits = redundancy_bits(m.size, n, m.q);
    return m;
}

double regular_fraction(int n, int trials, std::uint64_t seed) {
    if (trials <= 0) throw CodeError(ErrorKind::InvalidParams, "need a positive trial count");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> sym(0, 3);
    Word x(4, std::vector<Symbol>(n, 0));
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        for (auto& c : x.s) c = static_cast<Symbol>(sym(rng));
        hits += edit4::is_regular(x, n) ? 1 : 0;
    }
    return static_cast<double>(hits) / trials;
}

double short_segment_probability(int n, std::int64_t delta, int trials, std::uint64_t seed) {
    if (trials <= 0) throw CodeError(ErrorKind::InvalidParams, "need a positive trial count");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bit(0, 1);
    Word x(2, std::vector<Symbol>(n, 0));
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        for (auto& c : x.s) c = static_cast<Symbol>(bit(rng));
        const auto seg = deltrans::segment_lenient(x);
        bool ok = static_cast<std::int64_t>(seg.tail.size()) <= delta;
        for (const auto& z : seg.segments) ok = ok && static_cast<std::int64_t>(z.size()) <= delta;
        hits += ok ? 1 : 0;
    }
    return static_cast<double>(hits) / trials;
}

}  // namespace synccodes::oracle
