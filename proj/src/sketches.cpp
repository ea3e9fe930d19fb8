#include "synccodes/sketches.hpp"

#include <sstream>

namespace synccodes {

ModularValue mod_value(std::int64_t v, std::int64_t modulus) {
    if (modulus <= 0) throw CodeError(ErrorKind::InvalidParams, "modulus must be positive");
    std::int64_t r = v % modulus;
    if (r < 0) r += modulus;
    return {r, modulus};
}

std::int64_t signed_rep(std::int64_t v, std::int64_t modulus) {
    std::int64_t r = v % modulus;
    if (r < 0) r += modulus;
    if (2 * r > modulus) r -= modulus;
    return r;
}

std::int64_t signed_diff(const ModularValue& a, const ModularValue& b) {
    if (a.modulus != b.modulus) throw CodeError(ErrorKind::InvalidParams, "moduli differ");
    return signed_rep(a.value - b.value, a.modulus);
}

WeightFn identity_weights(int q) {
    WeightFn w;
    for (int c = 0; c < q; ++c) w.w.push_back(c);
    return w;
}

int ceil_log2(std::int64_t n) {
    int k = 0;
    while ((std::int64_t{1} << k) < n) ++k;
    return k;
}

int bits_for(std::int64_t modulus) {
    return modulus <= 1 ? 0 : ceil_log2(modulus);
}

ModularValue vt(const Word& x, std::int64_t N) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc = (acc + static_cast<std::int64_t>(i + 1) * x.s[i]) % N;
    return mod_value(acc, N);
}

ModularValue weighted_vt(const Word& x, const WeightFn& w, std::int64_t N) {
    if (w.q() != x.q) throw CodeError(ErrorKind::Alphabet, "weight function alphabet differs from word");
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc = (acc + static_cast<std::int64_t>(i + 1) * w(x.s[i])) % N;
    return mod_value(acc, N);
}

ModularValue count_mod(const Word& x, Symbol c, std::int64_t M) {
    if (c >= x.q) throw CodeError(ErrorKind::Alphabet, "symbol outside alphabet");
    std::int64_t k = 0;
    for (Symbol s : x.s) k += s == c;
    return mod_value(k, M);
}

ModularValue weight_mod(const Word& x, std::int64_t M) {
    std::int64_t k = 0;
    for (Symbol s : x.s) k += s;
    return mod_value(k, M);
}

RunSketches run_sketches(const Word& x, std::int64_t mod_n) {
    RunString rs = run_string(x);
    const std::int64_t n = mod_n < 0 ? static_cast<std::int64_t>(x.size()) : mod_n;
    std::int64_t s1 = 0, s2 = 0;
    for (std::size_t i = 1; i <= rs.n(); ++i) {
        std::int64_t r = rs.r[i];
        s1 += r;
        s2 += r * (r - 1);
    }
    return {mod_value(s1, 12 * n + 1), mod_value(s2, 16 * n * n + 1), mod_value(rs.runs(), 13)};
}

ModularValue g2(const Word& x) {
    require_binary(x, "g2");
    std::int64_t acc = 0;
    Symbol p = 0;
    for (Symbol c : x.s) {
        p ^= c;
        acc += p;
    }
    return mod_value(acc, 3);
}

ModularValue parity_vt(const Word& x, std::int64_t M) {
    require_binary(x, "parity_vt");
    std::int64_t acc = 0;
    Symbol p = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        p ^= x.s[i];
        acc = (acc + static_cast<std::int64_t>(i + 1) * p) % M;
    }
    return mod_value(acc, M);
}

std::string format(const SketchTuple& t) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : t) {
        if (!first) os << ' ';
        first = false;
        os << k << '=' << v.value << '/' << v.modulus;
    }
    return os.str();
}

}  // namespace synccodes
