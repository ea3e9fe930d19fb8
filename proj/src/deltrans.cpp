#include "synccodes/deltrans.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>
#include <map>
#include <set>

#include "json.hpp"
#include "synccodes/vt.hpp"

namespace synccodes::deltrans {

namespace {

bool marker_at(const std::vector<Symbol>& s, std::size_t i) {
    return i + 4 <= s.size() && s[i] == 0 && s[i + 1] == 0 && s[i + 2] == 1 && s[i + 3] == 1;
}

// 1-based start positions of every 0011
std::vector<int> marker_starts(const std::vector<Symbol>& s) {
    std::vector<int> out;
    for (std::size_t i = 0; i + 4 <= s.size(); ++i)
        if (marker_at(s, i)) out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::int64_t md(std::int64_t v, std::int64_t M) {
    v %= M;
    return v < 0 ? v + M : v;
}

Word pad_to(const Word& z, int len) {
    Word out = z;
    out.s.resize(len, 0);
    return out;
}

Word slice(const Word& x, int a, int b) {
    // 1-based inclusive; empty when b < a
    if (b < a) return Word(2);
    return Word(2, std::vector<Symbol>(x.s.begin() + (a - 1), x.s.begin() + b));
}

}  // namespace

Segmentation segment_lenient(const Word& y) {
    require_binary(y, "segment");
    Segmentation seg;
    seg.tail = Word(2);
    std::size_t start = 0;
    for (std::size_t i = 0; i + 4 <= y.size(); ++i) {
        if (!marker_at(y.s, i)) continue;
        seg.starts.push_back(static_cast<int>(start) + 1);
        seg.segments.emplace_back(2, std::vector<Symbol>(y.s.begin() + start, y.s.begin() + i + 4));
        start = i + 4;
        i += 3;
    }
    seg.tail.s.assign(y.s.begin() + start, y.s.end());
    return seg;
}

Segmentation segment(const Word& x) {
    Segmentation seg = segment_lenient(x);
    if (!seg.tail.empty() || seg.segments.empty())
        throw CodeError(ErrorKind::MissingTerminalMarker, "word does not end in 0011");
    return seg;
}

int marker_count(const Word& x) { return static_cast<int>(marker_starts(x.s).size()); }

namespace {

struct Packed {
    int len;
    std::uint32_t v;  // first symbol is the most significant bit
};

std::uint32_t bit_at(std::uint32_t v, int len, int i) { return (v >> (len - 1 - i)) & 1u; }

std::uint32_t flip(std::uint32_t v, int len, int i) { return v ^ (1u << (len - 1 - i)); }

std::uint32_t erase_bit(std::uint32_t v, int len, int i) {
    const int low = len - 1 - i;
    const std::uint32_t lowmask = (1u << low) - 1;
    return ((v >> (low + 1)) << low) | (v & lowmask);
}

// new bit lands at index i of the result
std::uint32_t insert_bit(std::uint32_t v, int len, int i, std::uint32_t b) {
    const int low = len - i;
    const std::uint32_t lowmask = (1u << low) - 1;
    return ((v >> low) << (low + 1)) | (b << low) | (v & lowmask);
}

template <class F>
void for_each_neighbour(Packed z, int max_len, F&& emit) {
    const int n = z.len;
    const std::uint32_t v = z.v;
    for (int i = 0; i < n; ++i) {
        const std::uint32_t a = flip(v, n, i);
        emit(Packed{n, a});
        for (int j = i + 1; j < n; ++j) emit(Packed{n, flip(a, n, j)});
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (bit_at(v, n, i) == bit_at(v, n, i + 1)) continue;
        const std::uint32_t a = flip(flip(v, n, i), n, i + 1);
        emit(Packed{n, a});
        for (int j = 0; j + 1 < n; ++j) {
            if (bit_at(a, n, j) == bit_at(a, n, j + 1)) continue;
            emit(Packed{n, flip(flip(a, n, j), n, j + 1)});
        }
    }
    if (n + 1 <= max_len)
        for (int i = 0; i <= n; ++i)
            for (std::uint32_t b = 0; b < 2; ++b) emit(Packed{n + 1, insert_bit(v, n, i, b)});
    for (int i = 0; i < n; ++i) {
        const std::uint32_t a = erase_bit(v, n, i);
        emit(Packed{n - 1, a});
        for (int j = 0; j <= n - 1; ++j)
            for (std::uint32_t b = 0; b < 2; ++b) emit(Packed{n, insert_bit(a, n - 1, j, b)});
    }
}

std::size_t table_index(int len, std::uint32_t v) { return (std::size_t{1} << len) - 1 + v; }

Packed pack(const Word& z) {
    std::uint32_t v = 0;
    for (Symbol c : z.s) v = (v << 1) | c;
    return {static_cast<int>(z.size()), v};
}

Word unpack(Packed p) {
    Word z(2, std::vector<Symbol>(p.len));
    for (int i = 0; i < p.len; ++i) z.s[i] = static_cast<Symbol>(bit_at(p.v, p.len, i));
    return z;
}

}  // namespace

std::vector<Word> neighbourhood(const Word& z, int max_len) {
    require_binary(z, "neighbourhood");
    if (z.size() > 30) throw CodeError(ErrorKind::SizeGuard, "neighbourhood is enumerated for words up to 30 bits");
    std::vector<Word> out;
    const Packed pz = pack(z);
    for_each_neighbour(pz, max_len, [&](Packed q) {
        if (q.len == pz.len && q.v == pz.v) return;
        out.push_back(unpack(q));
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

HashTable HashTable::build(int cap, std::int64_t range) {
    if (cap < 0 || cap > 20) throw CodeError(ErrorKind::SizeGuard, "hash domain cap must be in [0, 20]");
    HashTable h;
    h.cap_ = cap;
    h.table_.assign(table_index(cap + 1, 0), -1);
    std::vector<std::int64_t> stamp;
    std::int64_t round = 0;
    for (int len = 0; len <= cap; ++len) {
        for (std::uint32_t v = 0; v < (1u << len); ++v) {
            ++round;
            for_each_neighbour(Packed{len, v}, cap, [&](Packed q) {
                const std::int32_t c = h.table_[table_index(q.len, q.v)];
                if (c < 0) return;
                if (static_cast<std::size_t>(c) >= stamp.size()) stamp.resize(c + 1, 0);
                stamp[c] = round;
            });
            std::int32_t c = 0;
            while (static_cast<std::size_t>(c) < stamp.size() && stamp[c] == round) ++c;
            if (range > 0 && c >= range) throw CodeError(ErrorKind::RangeExhausted, "hash range too small for the greedy assignment");
            h.table_[table_index(len, v)] = c;
            h.used_ = std::max<std::int64_t>(h.used_, c + 1);
        }
    }
    h.range_ = range > 0 ? range : h.used_;
    return h;
}

std::int64_t HashTable::operator()(const Word& z) const {
    if (static_cast<int>(z.size()) <= cap_) {
        const Packed p = pack(z);
        return table_[table_index(p.len, p.v)];
    }
    // FNV-1a over the symbols and the length
    std::uint64_t acc = 1469598103934665603ull;
    for (Symbol c : z.s) acc = (acc ^ c) * 1099511628211ull;
    acc = (acc ^ z.size()) * 1099511628211ull;
    return static_cast<std::int64_t>(acc % static_cast<std::uint64_t>(range_));
}

std::string HashTable::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["cap"] = cap_;
    j["range"] = range_;
    j["colors_used"] = used_;
    j["order"] = "length then lexicographic, index (1 << len) - 1 + value";
    j["table"] = table_;
    return j.dump();
}

HashTable HashTable::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    HashTable h;
    h.cap_ = j.at("cap").get<int>();
    h.range_ = j.at("range").get<std::int64_t>();
    h.used_ = j.at("colors_used").get<std::int64_t>();
    h.table_ = j.at("table").get<std::vector<std::int32_t>>();
    if (h.cap_ < 0 || h.cap_ > 20 || h.table_.size() != table_index(h.cap_ + 1, 0))
        throw CodeError(ErrorKind::InvalidParams, "hash table size does not match its cap");
    return h;
}

const char* to_string(LocateCase c) {
    switch (c) {
        case LocateCase::Clean: return "clean";
        case LocateCase::Tail: return "tail";
        case LocateCase::Same: return "same";
        case LocateCase::MinusOne: return "merge";
        case LocateCase::PlusOne: return "split";
        case LocateCase::MinusTwo: return "merge2";
        case LocateCase::PlusTwo: return "split2";
    }
    return "?";
}

Params Params::derive(std::string profile, int n, int delta, std::int64_t m) {
    Params p;
    p.profile = std::move(profile);
    p.n = n;
    p.delta = delta;
    p.m = m;
    p.L_mod = 10 * static_cast<std::int64_t>(n) * delta * m + 1;
    const std::int64_t T1 = (delta + 1) * m, T2 = 3 * (delta + 1) * m;
    p.k_del_minus = static_cast<int>((T1 - 4 * m) / m);
    p.k_del_plus = static_cast<int>((T1 - 4 * m) / (2 * m));
    p.k_trans_minus = static_cast<int>((T1 - 4 * m) / (2 * m));
    p.k_trans_plus = static_cast<int>((T1 - 4 * m) / (2 * m));
    p.k_two = static_cast<int>((T2 - 12 * m) / (5 * m));
    const int kmin = std::max(p.k_del_minus, p.k_trans_minus);
    const int kplus = std::max(p.k_del_plus, p.k_trans_plus);
    p.L = std::max({delta + 1, 3 * delta, (kmin + 2) * delta + 1, (kplus + 2) * delta + 1, (p.k_two + 3) * delta + 1});
    p.Lp = 2 * p.L + 1;
    p.fhat_width = bits_for(2 * static_cast<std::int64_t>(p.Lp) + 1);
    const int t = (n + p.Lp - 1) / p.Lp;
    for (int i = 1; i <= t; ++i) p.family1.push_back({1 + (i - 1) * p.Lp, std::min(n, i * p.Lp)});
    for (int i = 1; i + 1 <= t; ++i) p.family2.push_back({1 + (i - 1) * p.Lp + p.L, std::min(n, i * p.Lp + p.L)});
    p.validate();
    return p;
}

void Params::validate() const {
    auto fail = [](const char* why) { throw CodeError(ErrorKind::InvalidParams, why); };
    if (n < 4 || delta < 4 || m < 1) fail("need n >= 4, delta >= 4, m >= 1");
    // segment weights Q = |z| m + h(z) lie in [4m, (delta+1)m)
    const std::int64_t qmin = 4 * m, qmax = (delta + 1) * m - 1;
    // |f(x) - f(y)| <= 2 sum Q + l |K| with l <= n/4 segments and |K| <= 4m
    const std::int64_t dmax = 2 * (static_cast<std::int64_t>(n) * m + (n / 4) * m) + (n / 4) * 4 * m;
    if (2 * dmax >= L_mod) fail("sketch modulus too small for the signed difference");
    // per-step growth of the potential: Q - |K| against the scan step assumed in the depth
    if (qmin - 3 * m < m) fail("deletion merge step below m");
    if (qmin - 2 * (m - 1) < 2 * m) fail("split/transposition step below 2m");
    if (2 * qmin - 3 * m < 5 * m) fail("double merge/split step below 5m");
    if (qmax >= (delta + 1) * m || 3 * qmax >= 3 * (delta + 1) * m) fail("thresholds do not dominate the overshoot");
    if (k_del_minus < 0 || k_del_plus < 0 || k_trans_minus < 0 || k_trans_plus < 0 || k_two < 0) fail("negative scan depth");
    if (Lp != 2 * L + 1) fail("inner length must be 2L+1");
    // any window of length <= L sits inside one interval of the two families
    for (int lo = 1; lo <= n; ++lo) {
        const int hi = std::min(n, lo + L - 1);
        bool ok = false;
        for (const auto& iv : family1) ok = ok || iv.contains(lo, hi);
        for (const auto& iv : family2) ok = ok || iv.contains(lo, hi);
        if (!ok) fail("window plan leaves a length-L window uncovered");
    }
}

PaperProfile PaperProfile::for_length(int n) {
    PaperProfile p;
    p.n = n;
    const std::int64_t lg = ceil_log2(n);
    p.delta = 50 + 1000 * lg;
    p.m = static_cast<__int128>(1000) * p.delta * p.delta;
    p.L_mod = static_cast<__int128>(10) * n * p.delta * p.m + 1;
    p.L = static_cast<__int128>(10000000000LL) * lg * lg * lg * lg;
    return p;
}

std::string to_string(__int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

Multiset hash_multiset(const Segmentation& s, const HashTable& h) {
    Multiset out;
    out.reserve(s.segments.size());
    for (const Word& z : s.segments) out.push_back(h(z));
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t segment_f(const Segmentation& s, const Params& p, const HashTable& h) {
    std::int64_t acc = 0;
    for (int j = 1; j <= s.count(); ++j) {
        const Word& z = s.segments[j - 1];
        acc = md(acc + md(static_cast<std::int64_t>(j) * (static_cast<std::int64_t>(z.size()) * p.m + h(z)), p.L_mod), p.L_mod);
    }
    return acc;
}

std::vector<Symbol> inner_sketch(const Word& z, int Lp, int width) {
    require_binary(z, "inner_sketch");
    if (static_cast<int>(z.size()) != Lp) throw CodeError(ErrorKind::IncompatibleLength, "inner sketch input must have length L'");
    const std::int64_t a1 = vt(z, Lp + 1).value;
    const std::int64_t a2 = parity_vt(z, 2 * static_cast<std::int64_t>(Lp) + 1).value;
    std::vector<Symbol> bits;
    for (int d = width - 1; d >= 0; --d) bits.push_back(static_cast<Symbol>((a1 >> d) & 1));
    for (int d = width - 1; d >= 0; --d) bits.push_back(static_cast<Symbol>((a2 >> d) & 1));
    return bits;
}

Word inner_correct(const Word& y, const std::vector<Symbol>& fhat, int Lp, int width) {
    require_binary(y, "inner_correct");
    if (static_cast<int>(fhat.size()) != 2 * width) throw CodeError(ErrorKind::IncompatibleLength, "inner sketch width mismatch");
    std::int64_t a1 = 0, a2 = 0;
    for (int d = 0; d < width; ++d) a1 = (a1 << 1) | fhat[d];
    for (int d = 0; d < width; ++d) a2 = (a2 << 1) | fhat[width + d];
    if (static_cast<int>(y.size()) == Lp - 1) return vt_correct(y, Lp, a1, Lp + 1);
    if (static_cast<int>(y.size()) == Lp) {
        // a transposition in z is one substitution in its prefix parities
        const Word zbar = vt_correct(prefix_parity(y), Lp, a2, 2 * static_cast<std::int64_t>(Lp) + 1);
        return prefix_parity_inverse(zbar);
    }
    throw CodeError(ErrorKind::IncompatibleLength, "inner word must have length L' or L'-1");
}

std::vector<Symbol> window_sketch(const Word& x, const std::vector<Interval>& family, int Lp, int width) {
    if (family.empty()) return {};
    std::vector<Symbol> acc(2 * width, 0);
    for (const auto& iv : family) {
        const auto f = inner_sketch(pad_to(slice(x, iv.a, iv.b), Lp), Lp, width);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= f[i];
    }
    return acc;
}

Sketch sketch(const Word& x, const Params& p, const HashTable& h) {
    require_binary(x, "deltrans sketch");
    if (static_cast<int>(x.size()) != p.n) throw CodeError(ErrorKind::IncompatibleLength, "word length differs from n");
    const Segmentation seg = segment(x);
    Sketch s;
    s.f = segment_f(seg, p, h);
    s.g1 = seg.count() % 5;
    s.g2 = static_cast<int>(g2(x).value);
    s.ghat1 = window_sketch(x, p.family1, p.Lp, p.fhat_width);
    s.ghat2 = window_sketch(x, p.family2, p.Lp, p.fhat_width);
    return s;
}

SketchTuple to_tuple(const Sketch& s, const Params& p) {
    auto as_int = [](const std::vector<Symbol>& bits) {
        std::int64_t v = 0;
        for (Symbol b : bits) v = (v << 1) | b;
        return v;
    };
    SketchTuple t{{"f", {s.f, p.L_mod}}, {"g1", {s.g1, 5}}, {"g2", {s.g2, 3}}};
    const std::int64_t span = std::int64_t{1} << p.fhat_bits();
    t["ghat1"] = {as_int(s.ghat1), span};
    if (!s.ghat2.empty()) t["ghat2"] = {as_int(s.ghat2), span};
    return t;
}

std::size_t sym_diff(const Multiset& a, const Multiset& b) {
    std::size_t i = 0, j = 0, d = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
            ++d;
        } else {
            ++j;
            ++d;
        }
    }
    return d + (a.size() - i) + (b.size() - j);
}

const Multiset& recover_multiset(const Multiset& Hy, const std::vector<Multiset>& code_sets) {
    for (const auto& S : code_sets)
        if (sym_diff(S, Hy) <= 4) return S;
    throw CodeError(ErrorKind::LocateFailure, "no code multiset within 4 of the received one");
}

Window locate(const Word& y, const Sketch& xs, const Multiset& Hx, const Params& p, const HashTable& h) {
    require_binary(y, "locate");
    const int n = p.n;
    Window w;
    if (static_cast<int>(y.size()) == n - 1) {
        w.deletion = true;
    } else if (static_cast<int>(y.size()) == n) {
        if (g2(y).value == xs.g2) return w;
    } else {
        throw CodeError(ErrorKind::LocateFailure, "received length must be n or n-1");
    }
    const Segmentation sy = segment_lenient(y);
    if (!sy.tail.empty()) {
        // the last marker was destroyed; the error sits after the last surviving marker
        w.kind = LocateCase::Tail;
        w.lo = (sy.count() > 0 ? sy.end(sy.count()) : 0) + 1;
        w.hi = n;
        return w;
    }
    const int ly = sy.count();
    const int dl = -static_cast<int>(signed_rep(xs.g1 - ly, 5));  // l_y - l_x
    if (w.deletion ? (dl < -1 || dl > 1) : (dl < -2 || dl > 2))
        throw CodeError(ErrorKind::LocateFailure, "segment count change outside the case lemma");

    std::vector<std::int64_t> Q(ly + 2, 0), suf(ly + 3, 0);
    std::int64_t fy = 0, sumHy = 0;
    for (int j = 1; j <= ly; ++j) {
        const Word& z = sy.segments[j - 1];
        const std::int64_t hz = h(z);
        Q[j] = static_cast<std::int64_t>(z.size()) * p.m + hz;
        sumHy += hz;
        fy = md(fy + md(j * Q[j], p.L_mod), p.L_mod);
    }
    for (int j = ly; j >= 1; --j) suf[j] = suf[j + 1] + Q[j];  // suf[j] = sum_{t >= j} Q_t
    std::int64_t sumHx = 0;
    for (auto v : Hx) sumHx += v;
    const std::int64_t K = (w.deletion ? p.m : 0) + sumHx - sumHy;
    const std::int64_t D = signed_rep(xs.f - fy, p.L_mod);
    auto span = [&](int first, int last) {
        first = std::max(first, 1);
        last = std::min(last, ly);
        w.lo = sy.starts[first - 1];
        w.hi = std::min(n, sy.end(last) + 1);
    };

    if (dl == 0) {
        w.kind = LocateCase::Same;
        if (K == 0 || D % K != 0) throw CodeError(ErrorKind::LocateFailure, "segment index is not integral");
        const std::int64_t i = D / K;
        if (i < 1 || i > ly) throw CodeError(ErrorKind::LocateFailure, "segment index out of range");
        span(static_cast<int>(i), static_cast<int>(i));
        return w;
    }

    int top, depth, extra;
    std::int64_t T;
    std::function<std::int64_t(int)> phi;
    switch (dl) {
        case -1:
            w.kind = LocateCase::MinusOne;
            top = ly;
            depth = w.deletion ? p.k_del_minus : p.k_trans_minus;
            extra = 0;
            T = (p.delta + 1) * p.m;
            phi = [&](int i) { return suf[i + 1] + i * K; };
            break;
        case 1:
            w.kind = LocateCase::PlusOne;
            top = ly - 1;
            depth = w.deletion ? p.k_del_plus : p.k_trans_plus;
            extra = 1;
            T = (p.delta + 1) * p.m;
            phi = [&](int i) { return -suf[i + 2] + i * K; };
            break;
        case -2:
            w.kind = LocateCase::MinusTwo;
            top = ly;
            depth = p.k_two;
            extra = 0;
            T = 3 * (p.delta + 1) * p.m;
            phi = [&](int i) { return 2 * suf[i + 1] + i * K; };
            break;
        default:
            w.kind = LocateCase::PlusTwo;
            top = ly - 2;
            depth = p.k_two;
            extra = 2;
            T = 3 * (p.delta + 1) * p.m;
            phi = [&](int i) { return -2 * suf[std::min(i + 3, ly + 1)] + i * K; };
            break;
    }
    for (int i = top; i >= 1; --i) {
        w.trace.push_back(phi(i));
        if (std::abs(w.trace.back() - D) <= T) {
            span(i - depth, i + extra);
            return w;
        }
    }
    throw CodeError(ErrorKind::LocateFailure, "potential scan found no segment");
}

Word correct(const Word& y, const Sketch& xs, const Multiset& Hx, const Params& p, const HashTable& h) {
    const Window w = locate(y, xs, Hx, p, h);
    if (w.kind == LocateCase::Clean) return y;
    const int n = p.n;
    const int shift = w.deletion ? 1 : 0;
    const std::vector<Interval>* fam = nullptr;
    const std::vector<Symbol>* ghat = nullptr;
    int idx = -1;
    for (std::size_t i = 0; i < p.family1.size() && idx < 0; ++i)
        if (p.family1[i].contains(w.lo, w.hi)) {
            fam = &p.family1;
            ghat = &xs.ghat1;
            idx = static_cast<int>(i);
        }
    for (std::size_t i = 0; i < p.family2.size() && idx < 0; ++i)
        if (p.family2[i].contains(w.lo, w.hi)) {
            fam = &p.family2;
            ghat = &xs.ghat2;
            idx = static_cast<int>(i);
        }
    if (idx < 0) throw CodeError(ErrorKind::DecodeFailure, "window is not inside any interval");
    const Interval iv = (*fam)[idx];
    // every other interval of the family is intact in y
    std::vector<Symbol> fhat = *ghat;
    for (std::size_t j = 0; j < fam->size(); ++j) {
        if (static_cast<int>(j) == idx) continue;
        const Interval o = (*fam)[j];
        const int off = o.a > iv.b ? shift : 0;
        const auto f = inner_sketch(pad_to(slice(y, o.a - off, o.b - off), p.Lp), p.Lp, p.fhat_width);
        for (std::size_t i = 0; i < fhat.size(); ++i) fhat[i] ^= f[i];
    }
    const int len = iv.b - iv.a + 1;
    Word inner = pad_to(slice(y, iv.a, iv.b - shift), p.Lp - shift);
    Word fixed(2);
    try {
        fixed = inner_correct(inner, fhat, p.Lp, p.fhat_width);
    } catch (const CodeError& e) {
        throw CodeError(ErrorKind::DecodeFailure, std::string("interval correction failed: ") + e.what());
    }
    Word x(2);
    x.s.reserve(n);
    x.s.assign(y.s.begin(), y.s.begin() + (iv.a - 1));
    x.s.insert(x.s.end(), fixed.s.begin(), fixed.s.begin() + len);
    x.s.insert(x.s.end(), y.s.begin() + (iv.b - shift), y.s.end());
    if (static_cast<int>(x.size()) != n) throw CodeError(ErrorKind::DecodeFailure, "splice produced the wrong length");
    return x;
}

std::vector<Multiset> expurgate_sets(std::vector<std::pair<Multiset, std::size_t>> buckets, std::size_t min_distance) {
    std::sort(buckets.begin(), buckets.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    std::vector<Multiset> kept;
    for (const auto& [S, count] : buckets) {
        bool close = false;
        for (const auto& K : kept) close = close || (S != K && sym_diff(S, K) < min_distance);
        if (!close) kept.push_back(S);
    }
    return kept;
}

std::vector<Word> expurgate(const std::vector<Word>& words, const HashTable& h, std::size_t min_distance) {
    std::vector<Multiset> sets;
    sets.reserve(words.size());
    std::map<Multiset, std::size_t> population;
    for (const Word& x : words) {
        sets.push_back(hash_multiset(segment(x), h));
        ++population[sets.back()];
    }
    const auto kept = expurgate_sets({population.begin(), population.end()}, min_distance);
    const std::set<Multiset> keep(kept.begin(), kept.end());
    std::vector<Word> out;
    for (std::size_t i = 0; i < words.size(); ++i)
        if (keep.count(sets[i])) out.push_back(words[i]);
    return out;
}

std::vector<Word> segment_domain(int n, int delta) {
    if (n < 4 || n > 30) throw CodeError(ErrorKind::SizeGuard, "segment domain is enumerated for 4 <= n <= 30");
    std::vector<Word> out;
    const int free = n - 4;
    Word x(2, std::vector<Symbol>(n, 0));
    x.s[n - 2] = x.s[n - 1] = 1;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << free); ++v) {
        for (int i = 0; i < free; ++i) x.s[i] = static_cast<Symbol>((v >> (free - 1 - i)) & 1);
        int last = 0;
        bool ok = true;
        for (int i = 0; i + 4 <= n && ok; ++i) {
            if (!marker_at(x.s, i)) continue;
            if (i + 4 - last > delta) ok = false;
            last = i + 4;
            i += 3;
        }
        if (ok && last == n) out.push_back(x);
    }
    return out;
}

int canonical_deletion(const Word& x, int d) {
    if (x.s[d - 1] == 0) {
        while (d > 1 && x.s[d - 2] == 0) --d;
    } else {
        while (d < static_cast<int>(x.size()) && x.s[d] == 1) ++d;
    }
    return d;
}

namespace {

// markers of x that survive at mapped positions, and the markers of y that are new
MarkerChange compare_markers(const std::vector<int>& px, const std::vector<int>& py, auto&& mapped) {
    MarkerChange c;
    std::vector<int> survivors, destroyed_idx, created_idx;
    for (std::size_t i = 0; i < px.size(); ++i) {
        const int q = mapped(px[i]);
        if (q > 0 && std::binary_search(py.begin(), py.end(), q)) survivors.push_back(q);
        else destroyed_idx.push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < py.size(); ++i)
        if (!std::binary_search(survivors.begin(), survivors.end(), py[i])) created_idx.push_back(static_cast<int>(i));
    c.destroyed = static_cast<int>(destroyed_idx.size());
    c.created = static_cast<int>(created_idx.size());
    for (std::size_t i = 1; i < destroyed_idx.size(); ++i)
        if (destroyed_idx[i] != destroyed_idx[i - 1] + 1) c.destroyed_consecutive = false;
    for (std::size_t i = 1; i < created_idx.size(); ++i)
        if (created_idx[i] != created_idx[i - 1] + 1) c.created_consecutive = false;
    return c;
}

}  // namespace

MarkerChange marker_change_deletion(const Word& x, int d) {
    d = canonical_deletion(x, d);
    const Word y = synccodes::apply(x, Deletion{d});
    return compare_markers(marker_starts(x.s), marker_starts(y.s), [d](int p) {
        if (p + 3 < d) return p;
        if (p > d) return p - 1;
        return 0;
    });
}

MarkerChange marker_change_transposition(const Word& x, int k) {
    if (x.s[k - 1] == x.s[k]) return {};
    const Word y = synccodes::apply(x, Transposition{k});
    return compare_markers(marker_starts(x.s), marker_starts(y.s), [k](int p) {
        if (p + 3 < k || p > k + 1) return p;
        return 0;
    });
}

std::vector<FamilyCode> code_family(const std::vector<Word>& domain, const Params& p, const HashTable& h) {
    std::map<std::tuple<std::int64_t, int, int>, std::vector<Word>> buckets;
    std::map<Word, Sketch> sk;
    for (const Word& x : domain) {
        const Sketch s = sketch(x, p, h);
        sk.emplace(x, s);
        buckets[{s.f, s.g1, s.g2}].push_back(x);
    }
    std::map<Sketch, std::vector<Word>> finals;
    for (const auto& [key, words] : buckets)
        for (const Word& x : expurgate(words, h)) finals[sk.at(x)].push_back(x);
    std::vector<FamilyCode> out;
    for (auto& [t, w] : finals) out.push_back({t, std::move(w)});
    return out;
}

DeskCode DeskCode::build() {
    DeskCode c;
    c.hash = HashTable::build(kDelta, 0);
    c.params = Params::derive("desk", kN, kDelta, c.hash.range());
    auto family = code_family(segment_domain(kN, kDelta), c.params, c.hash);
    std::size_t best = 0;
    for (std::size_t i = 1; i < family.size(); ++i)
        if (family[i].words.size() > family[best].words.size()) best = i;
    c.target = family[best].target;
    c.words = family[best].words;
    for (const Word& x : c.words) c.multisets.push_back(hash_multiset(segment(x), c.hash));
    std::sort(c.multisets.begin(), c.multisets.end());
    c.multisets.erase(std::unique(c.multisets.begin(), c.multisets.end()), c.multisets.end());
    return c;
}

int DeskCode::message_bits() const {
    int k = 0;
    while ((std::size_t{1} << (k + 1)) <= words.size()) ++k;
    return k;
}

Word DeskCode::encode(std::uint64_t index) const {
    if (index >= words.size()) throw CodeError(ErrorKind::OutOfRange, "message index exceeds the code size");
    return words[index];
}

Word DeskCode::decode(const Word& y) const {
    const Segmentation sy = segment_lenient(y);
    Multiset Hx = multisets.front();
    if (sy.tail.empty() && multisets.size() > 1) Hx = recover_multiset(hash_multiset(sy, hash), multisets);
    try {
        return correct(y, target, Hx, params, hash);
    } catch (const CodeError& e) {
        if (e.kind() == ErrorKind::DecodeFailure) throw;
        throw CodeError(ErrorKind::DecodeFailure, std::string("deltrans decode failed: ") + e.what());
    }
}

}  // namespace synccodes::deltrans
