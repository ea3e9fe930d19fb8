#include "synccodes/edit4.hpp"

#include <algorithm>

namespace synccodes::edit4 {

namespace {

void require_q4(const Word& x, const char* who) {
    if (x.q != 4) throw CodeError(ErrorKind::Alphabet, std::string(who) + " needs a 4-ary word");
}

std::int64_t modN(std::int64_t v, std::int64_t N) {
    v %= N;
    return v < 0 ? v + N : v;
}

// Flipped count parities select the symbol pair touched by the error.
std::vector<int> flipped(const Sketch& a, const Sketch& b) {
    std::vector<int> F;
    for (int c = 0; c < 3; ++c)
        if (a.h[c] != b.h[c]) F.push_back(c);
    return F;
}

int lone_symbol(const Sketch& sy, const Sketch& t) {
    auto F = flipped(sy, t);
    if (F.size() > 1) throw CodeError(ErrorKind::NoCandidate, "count sketches disagree in more than one symbol");
    return F.empty() ? 3 : F[0];
}

}  // namespace

Params Params::for_length(int n) {
    if (n < 1) throw CodeError(ErrorKind::InvalidParams, "edit4 length must be positive");
    Params p;
    p.n = n;
    p.logn = ceil_log2(n);
    p.w.w = {0, 1, 2 * p.logn + 11, 2 * p.logn + 12};
    p.N = 1 + 2 * static_cast<std::int64_t>(n) * (2 * p.logn + 12);
    return p;
}

Sketch sketch(const Word& x, const Params& p) {
    require_q4(x, "edit4 sketch");
    Sketch s;
    std::int64_t f = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        f += static_cast<std::int64_t>(i + 1) * p.w.w[x.s[i]];
        if (x.s[i] < 3) s.h[x.s[i]] ^= 1;
    }
    s.f = modN(f, p.N);
    return s;
}

SketchTuple to_tuple(const Sketch& s, const Params& p) {
    return {{"f", {s.f, p.N}}, {"h0", {s.h[0], 2}}, {"h1", {s.h[1], 2}}, {"h2", {s.h[2], 2}}};
}

RegularityWitness regularity(const Word& x, int n) {
    require_q4(x, "is_regular");
    if (static_cast<int>(x.size()) != n) throw CodeError(ErrorKind::IncompatibleLength, "word length differs from n");
    const int cap = ceil_log2(n) + 3;
    RegularityWitness wit;
    // (projection, run symbol, output)
    auto scan = [&](Symbol keep_a, Symbol keep_b, Symbol run, std::vector<std::pair<int, int>>& out) {
        int pos = 0, start = 0, len = 0;
        for (Symbol c : x.s) {
            if (c != keep_a && c != keep_b) continue;
            ++pos;
            if (c == run) {
                if (len == 0) start = pos;
                ++len;
            } else {
                if (len > cap) out.emplace_back(start, len);
                len = 0;
            }
        }
        if (len > cap) out.emplace_back(start, len);
    };
    scan(0, 2, 0, wit.zero_runs);
    scan(1, 3, 3, wit.three_runs);
    return wit;
}

bool is_regular(const Word& x, int n) { return regularity(x, n).regular(); }

bool membership(const Word& x, const Params& p, const Sketch& target) {
    if (static_cast<int>(x.size()) != p.n) return false;
    return is_regular(x, p.n) && sketch(x, p) == target;
}

Word correct_substitution(const Word& y, const Sketch& t, const Params& p) {
    require_q4(y, "correct_substitution");
    if (static_cast<int>(y.size()) != p.n) throw CodeError(ErrorKind::IncompatibleLength, "substitution keeps length n");
    const Sketch sy = sketch(y, p);
    const auto F = flipped(sy, t);
    if (F.empty()) {
        if (sy.f == t.f) return y;
        throw CodeError(ErrorKind::NoCandidate, "count sketches match but weighted sketch differs");
    }
    if (F.size() > 2) throw CodeError(ErrorKind::NoCandidate, "three count sketches flipped");
    const int lo = F[0];
    const int hi = F.size() == 2 ? F[1] : 3;
    // f(y) - f(x) = i (w(b) - w(a)) where x_i = a became b
    const std::int64_t D = signed_rep(sy.f - t.f, p.N);
    const std::int64_t dw = p.w.w[hi] - p.w.w[lo];
    if (D == 0 || std::abs(D) % dw != 0) throw CodeError(ErrorKind::NoCandidate, "position is not integral");
    const Symbol b = static_cast<Symbol>(D > 0 ? hi : lo);
    const Symbol a = static_cast<Symbol>(D > 0 ? lo : hi);
    const std::int64_t i = std::abs(D) / dw;
    if (i < 1 || i > p.n || y.s[i - 1] != b) throw CodeError(ErrorKind::NoCandidate, "no valid substitution position");
    Word x = y;
    x.s[i - 1] = a;
    return x;
}

Word correct_deletion(const Word& y, const Sketch& t, const Params& p) {
    require_q4(y, "correct_deletion");
    const int n = p.n;
    if (static_cast<int>(y.size()) != n - 1) throw CodeError(ErrorKind::IncompatibleLength, "deletion shortens by one");
    const Sketch sy = sketch(y, p);
    const Symbol a = static_cast<Symbol>(lone_symbol(sy, t));
    const std::int64_t wa = p.w.w[a];
    std::int64_t cur = modN(sy.f + n * wa, p.N);  // a appended at the end
    for (int j = n; j >= 1; --j) {
        if (cur == t.f) {
            Word x(4);
            x.s.reserve(n);
            x.s.assign(y.s.begin(), y.s.begin() + (j - 1));
            x.s.push_back(a);
            x.s.insert(x.s.end(), y.s.begin() + (j - 1), y.s.end());
            return x;
        }
        if (j > 1) cur = modN(cur + p.w.w[y.s[j - 2]] - wa, p.N);
    }
    throw CodeError(ErrorKind::NoCandidate, "no insertion position zeroes the sketch difference");
}

Word correct_insertion(const Word& y, const Sketch& t, const Params& p) {
    require_q4(y, "correct_insertion");
    const int n = p.n;
    if (static_cast<int>(y.size()) != n + 1) throw CodeError(ErrorKind::IncompatibleLength, "insertion lengthens by one");
    const Sketch sy = sketch(y, p);
    const Symbol a = static_cast<Symbol>(lone_symbol(sy, t));
    const std::int64_t wa = p.w.w[a];
    std::int64_t suffix = 0;
    for (int j = n + 1; j >= 1; --j) {
        const Symbol c = y.s[j - 1];
        if (c == a && modN(sy.f - j * wa - suffix, p.N) == t.f) {
            Word x = y;
            x.s.erase(x.s.begin() + (j - 1));
            return x;
        }
        suffix += p.w.w[c];
    }
    throw CodeError(ErrorKind::NoCandidate, "no deletion position zeroes the sketch difference");
}

Word correct(const Word& y, const Sketch& t, const Params& p) {
    const int len = static_cast<int>(y.size());
    if (len == p.n) return correct_substitution(y, t, p);
    if (len == p.n - 1) return correct_deletion(y, t, p);
    if (len == p.n + 1) return correct_insertion(y, t, p);
    throw CodeError(ErrorKind::IncompatibleLength, "received length is not within one edit of n");
}

namespace {

// Runlength replacement on a binary projection: bit 0 is the constrained symbol.
std::vector<Symbol> rll_bits_encode(std::vector<Symbol> b) {
    const int mp = static_cast<int>(b.size());
    const int digits = ceil_log2(mp);
    const int k = digits + 2;
    b.push_back(1);
    b.push_back(0);
    std::size_t pos = 0;
    while (pos < b.size()) {
        if (b[pos] != 0) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < b.size() && b[end] == 0) ++end;
        if (static_cast<int>(end - pos) < k) {
            pos = end;
            continue;
        }
        b.erase(b.begin() + pos, b.begin() + pos + k);
        for (int d = digits - 1; d >= 0; --d) b.push_back(static_cast<Symbol>((pos >> d) & 1));
        b.push_back(1);
        b.push_back(1);
    }
    return b;
}

std::vector<Symbol> rll_bits_decode(std::vector<Symbol> b) {
    if (b.size() < 2) throw CodeError(ErrorKind::MalformedEncoding, "projection shorter than its suffix");
    const int mp = static_cast<int>(b.size()) - 2;
    const int digits = ceil_log2(mp);
    const int k = digits + 2;
    int guard = mp / k + 1;
    while (b.back() == 1) {
        if (guard-- <= 0 || static_cast<int>(b.size()) < k || b[b.size() - 2] != 1)
            throw CodeError(ErrorKind::MalformedEncoding, "inconsistent runlength marker");
        std::size_t i = 0;
        for (int d = 0; d < digits; ++d) i = (i << 1) | b[b.size() - k + d];
        b.resize(b.size() - k);
        if (i > b.size()) throw CodeError(ErrorKind::MalformedEncoding, "marker points past the end");
        b.insert(b.begin() + i, static_cast<std::size_t>(k), Symbol{0});
    }
    if (b[b.size() - 2] != 1) throw CodeError(ErrorKind::MalformedEncoding, "missing terminal suffix");
    b.resize(b.size() - 2);
    return b;
}

bool even_class(Symbol c) { return c == 0 || c == 2; }

}  // namespace

Word rll_encode(const Word& z) {
    require_q4(z, "rll_encode");
    std::vector<Symbol> p1, p2;
    for (Symbol c : z.s) {
        if (even_class(c)) p1.push_back(c == 2);
        else p2.push_back(c == 1);
    }
    p1 = rll_bits_encode(std::move(p1));
    p2 = rll_bits_encode(std::move(p2));
    Word x(4);
    x.s.reserve(z.size() + 4);
    std::size_t i1 = 0, i2 = 0;
    auto even = [](Symbol b) { return static_cast<Symbol>(b ? 2 : 0); };
    auto odd = [](Symbol b) { return static_cast<Symbol>(b ? 1 : 3); };
    for (Symbol c : z.s) {
        if (even_class(c)) x.s.push_back(even(p1[i1++]));
        else x.s.push_back(odd(p2[i2++]));
    }
    x.s.push_back(even(p1[i1++]));
    x.s.push_back(even(p1[i1++]));
    x.s.push_back(odd(p2[i2++]));
    x.s.push_back(odd(p2[i2++]));
    return x;
}

Word rll_decode(const Word& x) {
    require_q4(x, "rll_decode");
    if (x.size() < 4) throw CodeError(ErrorKind::MalformedEncoding, "encoding shorter than 4 symbols");
    const std::size_t m = x.size() - 4;
    if (!even_class(x.s[m]) || !even_class(x.s[m + 1]) || even_class(x.s[m + 2]) || even_class(x.s[m + 3]))
        throw CodeError(ErrorKind::MalformedEncoding, "suffix classes out of place");
    std::vector<Symbol> p1, p2;
    for (Symbol c : x.s) {
        if (even_class(c)) p1.push_back(c == 2);
        else p2.push_back(c == 1);
    }
    p1 = rll_bits_decode(std::move(p1));
    p2 = rll_bits_decode(std::move(p2));
    Word z(4);
    z.s.reserve(m);
    std::size_t i1 = 0, i2 = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (even_class(x.s[j])) {
            if (i1 >= p1.size()) throw CodeError(ErrorKind::MalformedEncoding, "projection length mismatch");
            z.s.push_back(p1[i1++] ? 2 : 0);
        } else {
            if (i2 >= p2.size()) throw CodeError(ErrorKind::MalformedEncoding, "projection length mismatch");
            z.s.push_back(p2[i2++] ? 1 : 3);
        }
    }
    if (i1 != p1.size() || i2 != p2.size()) throw CodeError(ErrorKind::MalformedEncoding, "projection length mismatch");
    return z;
}

Codec Codec::for_message(int m) {
    if (m < 0) throw CodeError(ErrorKind::InvalidParams, "message length must be non-negative");
    Codec c;
    c.m_ = m;
    c.params_ = Params::for_length(m + 4);
    c.f_bits_ = bits_for(c.params_.N);
    c.vt_ = VtSystematic::for_payload((c.f_bits_ + 3 + 1) / 2);
    return c;
}

std::vector<int> Codec::lengths_for(int len) {
    std::vector<int> exact, near;
    for (int m = 0;; ++m) {
        const int n = for_message(m).length();
        if (n > len + 1) break;
        if (n == len) exact.push_back(m);
        else if (n >= len - 1) near.push_back(m);
    }
    exact.insert(exact.end(), near.begin(), near.end());
    return exact;
}

Word Codec::tail(const Word& x) const {
    const Sketch s = sketch(x, params_);
    std::vector<Symbol> bits;
    for (int d = f_bits_ - 1; d >= 0; --d) bits.push_back(static_cast<Symbol>((s.f >> d) & 1));
    for (int c = 0; c < 3; ++c) bits.push_back(s.h[c]);
    const int k = vt_.payload_bits();
    bits.resize(2 * k, 0);
    Word hi = vt_.encode(std::vector<Symbol>(bits.begin(), bits.begin() + k));
    Word lo = vt_.encode(std::vector<Symbol>(bits.begin() + k, bits.end()));
    Word u(4, std::vector<Symbol>(vt_.length()));
    for (int i = 0; i < vt_.length(); ++i) u.s[i] = static_cast<Symbol>(2 * hi.s[i] + lo.s[i]);
    return u;
}

Word Codec::encode(const Word& z) const {
    require_q4(z, "edit4 encode");
    if (static_cast<int>(z.size()) != m_) throw CodeError(ErrorKind::IncompatibleLength, "message length differs from m");
    Word x = rll_encode(z);
    Word u = tail(x);
    x.s.insert(x.s.end(), u.s.begin(), u.s.end());
    return x;
}

Word Codec::decode(const Word& y) const {
    require_q4(y, "edit4 decode");
    const int n = length();
    const int len = static_cast<int>(y.size());
    const int delta = len - n;
    if (delta < -1 || delta > 1) throw CodeError(ErrorKind::IncompatibleLength, "received length is not within one edit of the code length");
    const int L = vt_.length();
    try {
        // the tail planes see at most one edit each
        Word hi(2), lo(2);
        for (int i = len - (L + delta); i < len; ++i) {
            hi.s.push_back(y.s[i] >> 1);
            lo.s.push_back(y.s[i] & 1);
        }
        auto bh = vt_.decode(hi);
        auto bl = vt_.decode(lo);
        Word uh = vt_.encode(bh), ul = vt_.encode(bl);
        bh.insert(bh.end(), bl.begin(), bl.end());
        Sketch target;
        for (int d = 0; d < f_bits_; ++d) target.f = (target.f << 1) | bh[d];
        for (int c = 0; c < 3; ++c) target.h[c] = bh[f_bits_ + c];

        bool tail_intact = true;
        for (int i = 0; i < L; ++i)
            if (y.s[len - L + i] != 2 * uh.s[i] + ul.s[i]) tail_intact = false;
        Word x(4);
        if (!tail_intact) {
            x.s.assign(y.s.begin(), y.s.begin() + payload_length());
        } else {
            Word head(4, std::vector<Symbol>(y.s.begin(), y.s.end() - L));
            x = correct(head, target, params_);
        }
        return rll_decode(x);
    } catch (const CodeError& e) {
        throw CodeError(ErrorKind::DecodeFailure, std::string("edit4 decode failed: ") + e.what());
    }
}

}  // namespace synccodes::edit4
