#include "synccodes/delsub.hpp"

#include <algorithm>
#include <set>

namespace synccodes::delsub {

namespace {

std::int64_t md(std::int64_t v, std::int64_t M) {
    v %= M;
    return v < 0 ? v + M : v;
}

void put_bits(std::vector<Symbol>& out, std::int64_t v, int width) {
    for (int d = width - 1; d >= 0; --d) out.push_back(static_cast<Symbol>((v >> d) & 1));
}

std::int64_t get_bits(const std::vector<Symbol>& in, std::size_t& pos, int width) {
    std::int64_t v = 0;
    for (int d = 0; d < width; ++d) v = (v << 1) | in[pos++];
    return v;
}

// Table 1: (h(x) - h(y)) mod 5 -> (x_d, x_e)
bool table_lookup(std::int64_t hd, Symbol& xd, Symbol& xe) {
    switch (hd) {
        case 4: xd = 0; xe = 0; return true;
        case 1: xd = 0; xe = 1; return true;
        case 0: xd = 1; xe = 0; return true;
        case 2: xd = 1; xe = 1; return true;
        default: return false;
    }
}

bool run_delta_ok(int rd) { return rd == -2 || rd == 0 || rd == 2 || rd == 4; }

}  // namespace

Params Params::for_length(int n, std::int64_t mod_n) {
    if (n < 1) throw CodeError(ErrorKind::InvalidParams, "delsub length must be positive");
    if (mod_n < 0) mod_n = n;
    if (mod_n < n) throw CodeError(ErrorKind::InvalidParams, "sketch moduli must be taken from some mod_n >= n");
    return Params{n, mod_n};
}

int Params::sketch_bits() const {
    return bits_for(mod_f()) + bits_for(mod_f1()) + bits_for(mod_f2()) + bits_for(mod_h) + bits_for(mod_hr);
}

Sketch sketch(const Word& x, const Params& p) {
    require_binary(x, "delsub sketch");
    Sketch s;
    std::int64_t f = 0, h = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        f += static_cast<std::int64_t>(i + 1) * x.s[i];
        h += x.s[i];
    }
    s.f = md(f, p.mod_f());
    s.h = md(h, Params::mod_h);
    const RunSketches r = run_sketches(x, p.mod_n);
    s.f1r = r.f1r.value;
    s.f2r = r.f2r.value;
    s.hr = r.hr.value;
    return s;
}

SketchTuple to_tuple(const Sketch& s, const Params& p) {
    return {{"f", {s.f, p.mod_f()}},
            {"f1r", {s.f1r, p.mod_f1()}},
            {"f2r", {s.f2r, p.mod_f2()}},
            {"h", {s.h, Params::mod_h}},
            {"hr", {s.hr, Params::mod_hr}}};
}

bool membership(const Word& x, const Params& p, const Sketch& target) {
    return static_cast<int>(x.size()) == p.n && sketch(x, p) == target;
}

std::vector<Symbol> to_bits(const Sketch& s, const Params& p) {
    std::vector<Symbol> out;
    put_bits(out, s.f, bits_for(p.mod_f()));
    put_bits(out, s.f1r, bits_for(p.mod_f1()));
    put_bits(out, s.f2r, bits_for(p.mod_f2()));
    put_bits(out, s.h, bits_for(Params::mod_h));
    put_bits(out, s.hr, bits_for(Params::mod_hr));
    return out;
}

bool from_bits(const std::vector<Symbol>& bits, const Params& p, Sketch& s) {
    if (static_cast<int>(bits.size()) != p.sketch_bits()) return false;
    std::size_t pos = 0;
    s.f = get_bits(bits, pos, bits_for(p.mod_f()));
    s.f1r = get_bits(bits, pos, bits_for(p.mod_f1()));
    s.f2r = get_bits(bits, pos, bits_for(p.mod_f2()));
    s.h = get_bits(bits, pos, bits_for(Params::mod_h));
    s.hr = get_bits(bits, pos, bits_for(Params::mod_hr));
    return s.f < p.mod_f() && s.f1r < p.mod_f1() && s.f2r < p.mod_f2() && s.h < Params::mod_h && s.hr < Params::mod_hr;
}

Classification classify_error(const Sketch& xs, const Word& y) {
    require_binary(y, "classify_error");
    std::int64_t hy = 0;
    for (Symbol c : y.s) hy += c;
    Classification c;
    if (!table_lookup(md(xs.h - hy, Params::mod_h), c.xd, c.xe))
        throw CodeError(ErrorKind::EmptyList, "weight difference 3 mod 5 is impossible");
    c.run_delta = static_cast<int>(signed_rep(xs.hr - run_string(y).runs(), Params::mod_hr));
    if (!run_delta_ok(c.run_delta)) throw CodeError(ErrorKind::EmptyList, "run-count change outside {-2, 0, 2, 4}");
    return c;
}

namespace {

std::vector<Word> decode_same_length(const Word& y, const Sketch& t, const Params& p) {
    const int n = p.n;
    std::vector<Word> out;
    if (sketch(y, p) == t) out.push_back(y);
    std::int64_t f = 0, h = 0;
    for (int i = 0; i < n; ++i) {
        f += static_cast<std::int64_t>(i + 1) * y.s[i];
        h += y.s[i];
    }
    const std::int64_t hd = md(t.h - h, Params::mod_h);
    std::int64_t e = 0;
    Symbol from = 0;
    if (hd == 1) {
        e = md(t.f - f, p.mod_f());
        from = 0;
    } else if (hd == 4) {
        e = md(f - t.f, p.mod_f());
        from = 1;
    }
    if (e >= 1 && e <= n && y.s[e - 1] == from) {
        Word x = y;
        x.s[e - 1] ^= 1;
        if (sketch(x, p) == t) out.push_back(x);
    }
    if (out.empty()) throw CodeError(ErrorKind::EmptyList, "no codeword within one substitution");
    return out;
}

// Run-string sums of candidates x~ = flip_e(insert b at d into y), in O(1) each.
// Against y's run string shifted by pi(i) (i < d -> i, d -> d-1, i > d -> i-1),
// the rank offset is constant between the breakpoints d, d+1, e, e+1.
struct ShortDecoder {
    const Word& y;
    const Params& p;
    int n;
    std::vector<Symbol> ys;      // ys[1..n-1], ys[0] = 0, ys[n] = 1
    std::vector<std::int64_t> r; // r[0..n]
    std::vector<Symbol> c;       // c[1..n]
    std::vector<std::int64_t> P1, P2, suf;
    std::int64_t fy = 0;

    ShortDecoder(const Word& y_, const Params& p_) : y(y_), p(p_), n(p_.n) {
        ys.assign(n + 1, 0);
        for (int i = 1; i <= n - 1; ++i) ys[i] = y.s[i - 1];
        ys[n] = 1;
        r.assign(n + 1, 0);
        c.assign(n + 1, 0);
        P1.assign(n + 1, 0);
        P2.assign(n + 1, 0);
        for (int i = 1; i <= n; ++i) {
            c[i] = ys[i] != ys[i - 1];
            r[i] = r[i - 1] + c[i];
            P1[i] = P1[i - 1] + r[i];
            P2[i] = P2[i - 1] + r[i] * (r[i] - 1);
        }
        suf.assign(n + 2, 0);
        for (int i = n - 1; i >= 1; --i) suf[i] = suf[i + 1] + ys[i];
        for (int i = 1; i <= n - 1; ++i) fy += static_cast<std::int64_t>(i) * ys[i];
    }

    Symbol ins(int j, int d, Symbol b) const { return j < d ? ys[j] : (j == d ? b : ys[j - 1]); }

    Symbol xt(int j, int d, Symbol b, int e) const {
        if (j == 0) return 0;
        if (j == n + 1) return 1;
        Symbol v = ins(j, d, b);
        return j == e ? static_cast<Symbol>(v ^ 1) : v;
    }

    int pi(int i, int d) const { return i < d ? i : i - 1; }

    void sums(int d, Symbol b, int e, std::int64_t& S1, std::int64_t& S2, std::int64_t& runs) const {
        int bp[4];
        int nb = 0;
        auto add = [&](int v) {
            if (v >= 1 && v <= n + 1) bp[nb++] = v;
        };
        add(d);
        add(d + 1);
        if (e > 0) {
            add(e);
            add(e + 1);
        }
        std::sort(bp, bp + nb);
        nb = static_cast<int>(std::unique(bp, bp + nb) - bp);
        std::int64_t D = 0;
        S1 = S2 = 0;
        auto seg = [&](int lo, int hi) {
            if (hi > n) hi = n;
            if (lo > hi) return;
            const std::int64_t cnt = hi - lo + 1;
            std::int64_t sr, srr;
            if (lo == d) {
                const std::int64_t v = r[d - 1];
                sr = v;
                srr = v * (v - 1);
            } else {
                const int a = pi(lo, d), z = pi(hi, d);
                sr = P1[z] - P1[a - 1];
                srr = P2[z] - P2[a - 1];
            }
            S1 += sr + D * cnt;
            S2 += srr + 2 * D * sr + (D * D - D) * cnt;
        };
        int cur = 1;
        for (int k = 0; k < nb; ++k) {
            const int at = bp[k];
            seg(cur, at - 1);
            const int ct = xt(at, d, b, e) != xt(at - 1, d, b, e);
            D += ct - (at == d ? 0 : c[pi(at, d)]);
            cur = at;
        }
        seg(cur, n);
        runs = r[n] + D + 1;
    }

    Word build(int d, Symbol b, int e) const {
        Word x(2, std::vector<Symbol>(n));
        for (int j = 1; j <= n; ++j) x.s[j - 1] = xt(j, d, b, e);
        return x;
    }
};

std::vector<Word> decode_short(const Word& y, const Sketch& t, const Params& p) {
    const int n = p.n;
    ShortDecoder sd(y, p);
    std::int64_t hy = 0;
    for (Symbol v : y.s) hy += v;
    const std::int64_t hd = md(t.h - hy, Params::mod_h);
    const int rd = static_cast<int>(signed_rep(t.hr - (sd.r[n] + 1), Params::mod_hr));
    if (!run_delta_ok(rd)) throw CodeError(ErrorKind::EmptyList, "run-count change outside {-2, 0, 2, 4}");

    struct Kind {
        Symbol b;
        int xe;  // -1 for a pure deletion
    };
    std::vector<Kind> kinds;
    Symbol xd = 0, xe = 0;
    if (table_lookup(hd, xd, xe)) kinds.push_back({xd, xe});
    if (hd == 0 || hd == 1) kinds.push_back({static_cast<Symbol>(hd), -1});
    if (kinds.empty()) throw CodeError(ErrorKind::EmptyList, "weight difference 3 mod 5 is impossible");

    const std::int64_t Mf = p.mod_f();
    std::vector<Word> out;
    for (int d = 1; d <= n; ++d) {
        for (const Kind& k : kinds) {
            // inserting b right after an equal symbol repeats an earlier d
            if (d > 1 && sd.ys[d - 1] == k.b) continue;
            const std::int64_t fw = sd.fy + static_cast<std::int64_t>(d) * k.b + sd.suf[d];
            int e = 0;
            if (k.xe < 0) {
                if (md(fw - t.f, Mf) != 0) continue;
            } else {
                // e (2 x_e - 1) = s - f_w
                const std::int64_t diff = md(t.f - fw, Mf);
                const std::int64_t ee = k.xe == 1 ? diff : md(-diff, Mf);
                if (ee < 1 || ee > n || ee == d) continue;
                e = static_cast<int>(ee);
                if (sd.ins(e, d, k.b) != 1 - k.xe) continue;
            }
            std::int64_t S1, S2, runs;
            sd.sums(d, k.b, e, S1, S2, runs);
            if (md(S1, p.mod_f1()) != t.f1r || md(S2, p.mod_f2()) != t.f2r || md(runs, Params::mod_hr) != t.hr)
                continue;
            out.push_back(sd.build(d, k.b, e));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw CodeError(ErrorKind::EmptyList, "no valid candidate pair");
    return out;
}

}  // namespace

std::vector<Word> list_decode(const Word& y, const Sketch& t, const Params& p) {
    require_binary(y, "list_decode");
    const int len = static_cast<int>(y.size());
    if (len == p.n) return decode_same_length(y, t, p);
    if (len == p.n - 1) return decode_short(y, t, p);
    throw CodeError(ErrorKind::IncompatibleLength, "received length must be n or n-1");
}

bool within_del_sub(const Word& x, const Word& y) {
    const std::size_t n = x.size();
    if (y.size() == n) {
        int diff = 0;
        for (std::size_t i = 0; i < n; ++i) diff += x.s[i] != y.s[i];
        return diff <= 1;
    }
    if (y.size() + 1 != n) return false;
    // pre[d] = mismatches of x[0..d) vs y[0..d); post[d] = mismatches of x(d..n) vs y[d..n-1)
    std::vector<int> pre(n, 0), post(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) pre[i + 1] = pre[i] + (x.s[i] != y.s[i]);
    for (std::size_t d = n - 1; d-- > 0;) post[d] = post[d + 1] + (x.s[d + 1] != y.s[d]);
    for (std::size_t d = 0; d < n; ++d)
        if (pre[d] + post[d] <= 1) return true;
    return false;
}

Codec Codec::for_message(int m) {
    if (m < 1) throw CodeError(ErrorKind::InvalidParams, "message length must be positive");
    Codec c;
    c.m_ = m;
    c.outer_ = Params::for_length(m);
    const int ell = c.outer_.sketch_bits();
    if (ell > kInnerModN) throw CodeError(ErrorKind::InvalidParams, "message too long for the inner sketch layer");
    c.inner_ = Params::for_length(ell, kInnerModN);
    c.inner_sigma_bits_ = c.inner_.sketch_bits();
    return c;
}

Word Codec::encode(const Word& z) const {
    require_binary(z, "delsub encode");
    if (static_cast<int>(z.size()) != m_) throw CodeError(ErrorKind::IncompatibleLength, "message length differs from m");
    const auto b = to_bits(sketch(z, outer_), outer_);
    const auto sigma = to_bits(sketch(Word(2, b), inner_), inner_);
    Word out = z;
    out.s.insert(out.s.end(), b.begin(), b.end());
    for (Symbol v : sigma) out.s.insert(out.s.end(), 3, v);
    return out;
}

namespace {

// Candidate sigma values from the repetition-coded tail; short by `del` bits.
std::set<std::vector<Symbol>> r3_list(const std::vector<Symbol>& t, int s, int del) {
    std::set<std::vector<Symbol>> out;
    auto cost = [](int ones) { return std::min(ones, 3 - ones); };
    if (del == 0) {
        std::vector<Symbol> v(s);
        for (int i = 0; i < s; ++i) v[i] = (t[3 * i] + t[3 * i + 1] + t[3 * i + 2]) >= 2;
        out.insert(v);
        return out;
    }
    // block j lost one bit; blocks before it are aligned, blocks after it shifted by one
    std::vector<int> pre(s + 1, 0), suf(s + 1, 0);
    for (int i = 0; i < s; ++i) pre[i + 1] = pre[i] + cost(t[3 * i] + t[3 * i + 1] + t[3 * i + 2]);
    for (int i = s - 1; i >= 0; --i) suf[i] = suf[i + 1] + (i + 1 < s ? cost(t[3 * i + 2] + t[3 * i + 3] + t[3 * i + 4]) : 0);
    for (int j = 0; j < s; ++j) {
        const Symbol a = t[3 * j], b = t[3 * j + 1];
        const int c2 = a == b ? 0 : 1;
        if (pre[j] + suf[j] + c2 > 1) continue;
        std::vector<Symbol> v(s);
        for (int i = 0; i < j; ++i) v[i] = (t[3 * i] + t[3 * i + 1] + t[3 * i + 2]) >= 2;
        for (int i = j + 1; i < s; ++i) v[i] = (t[3 * i - 1] + t[3 * i] + t[3 * i + 1]) >= 2;
        if (a == b) {
            v[j] = a;
            out.insert(v);
        } else {
            v[j] = 0;
            out.insert(v);
            v[j] = 1;
            out.insert(v);
        }
    }
    return out;
}

}  // namespace

std::vector<Word> Codec::decode(const Word& y) const {
    require_binary(y, "delsub decode");
    const int n = length();
    const int del = n - static_cast<int>(y.size());
    if (del != 0 && del != 1) throw CodeError(ErrorKind::IncompatibleLength, "received length must be n or n-1");
    const int ell = sketch_bits();
    const int s = inner_bits();
    std::vector<Symbol> tail(y.s.end() - (3 * s - del), y.s.end());
    std::vector<Word> found;
    const Word yb(2, std::vector<Symbol>(y.s.begin() + m_, y.s.begin() + m_ + ell - del));
    const Word yz(2, std::vector<Symbol>(y.s.begin(), y.s.begin() + m_ - del));
    std::set<std::vector<Symbol>> seen_b;
    for (const auto& sigma_bits : r3_list(tail, s, del)) {
        Sketch sigma;
        if (!from_bits(sigma_bits, inner_, sigma)) continue;
        std::vector<Word> bs;
        try {
            bs = list_decode(yb, sigma, inner_);
        } catch (const CodeError&) {
            continue;
        }
        for (const Word& b : bs) {
            if (!seen_b.insert(b.s).second) continue;
            Sketch target;
            if (!from_bits(b.s, outer_, target)) continue;
            std::vector<Word> zs;
            try {
                zs = list_decode(yz, target, outer_);
            } catch (const CodeError&) {
                continue;
            }
            for (Word& z : zs)
                if (within_del_sub(encode(z), y)) found.push_back(std::move(z));
        }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    if (found.empty()) throw CodeError(ErrorKind::DecodeFailure, "no message is consistent with the received word");
    return found;
}

}  // namespace synccodes::delsub
