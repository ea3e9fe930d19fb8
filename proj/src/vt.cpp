#include "synccodes/vt.hpp"

namespace synccodes {

namespace {

std::int64_t vt_sum(const std::vector<Symbol>& s) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += static_cast<std::int64_t>(i + 1) * s[i];
    return acc;
}

std::int64_t mod(std::int64_t v, std::int64_t M) {
    v %= M;
    return v < 0 ? v + M : v;
}

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

Word vt_correct(const Word& y, int n, std::int64_t a, std::int64_t M) {
    require_binary(y, "vt_correct");
    const int len = static_cast<int>(y.size());
    std::vector<Symbol> x;
    if (len == n) {
        const std::int64_t D = mod(a - vt_sum(y.s), M);
        x = y.s;
        if (D == 0) {
        } else if (D <= n && x[D - 1] == 0) {
            x[D - 1] = 1;
        } else if (M - D >= 1 && M - D <= n && x[M - D - 1] == 1) {
            x[M - D - 1] = 0;
        } else {
            throw CodeError(ErrorKind::NoCandidate, "no substitution matches the VT residue");
        }
    } else if (len == n - 1) {
        const std::int64_t D = mod(a - vt_sum(y.s), M);
        std::int64_t w = 0;
        for (Symbol c : y.s) w += c;
        x.reserve(n);
        if (D <= w) {
            // a 0 with D ones to its right
            std::int64_t ones_right = 0;
            int pos = len;
            while (ones_right < D) ones_right += y.s[--pos];
            while (pos > 0 && y.s[pos - 1] == 0) --pos;
            x.assign(y.s.begin(), y.s.begin() + pos);
            x.push_back(0);
            x.insert(x.end(), y.s.begin() + pos, y.s.end());
        } else {
            // a 1 with D - w - 1 zeros to its left
            std::int64_t zeros = D - w - 1;
            if (zeros > len - w) throw CodeError(ErrorKind::NoCandidate, "VT residue out of range");
            int pos = 0;
            std::int64_t seen = 0;
            while (seen < zeros) seen += 1 - y.s[pos++];
            x.assign(y.s.begin(), y.s.begin() + pos);
            x.push_back(1);
            x.insert(x.end(), y.s.begin() + pos, y.s.end());
        }
    } else if (len == n + 1) {
        const std::int64_t D = mod(vt_sum(y.s) - a, M);
        std::int64_t w = 0;
        for (Symbol c : y.s) w += c;
        int drop = -1;
        if (D < w || (D == w && y.s[0] == 0)) {
            // an inserted 0 with D ones to its right
            std::int64_t ones_right = 0;
            for (int p = len - 1; p >= 0; --p) {
                if (y.s[p] == 0 && ones_right == D) {
                    drop = p;
                    break;
                }
                ones_right += y.s[p];
            }
        } else {
            // an inserted 1 with D - w zeros to its left
            std::int64_t zeros = 0;
            for (int p = 0; p < len; ++p) {
                if (y.s[p] == 1 && zeros == D - w) {
                    drop = p;
                    break;
                }
                zeros += 1 - y.s[p];
            }
        }
        if (drop < 0) throw CodeError(ErrorKind::NoCandidate, "no insertion matches the VT residue");
        x = y.s;
        x.erase(x.begin() + drop);
    } else {
        throw CodeError(ErrorKind::IncompatibleLength, "received length is not within one edit of n");
    }
    if (mod(vt_sum(x) - a, M) != 0) throw CodeError(ErrorKind::NoCandidate, "VT residue check failed");
    return Word(2, std::move(x));
}

VtSystematic VtSystematic::for_payload(int k) {
    if (k < 0) throw CodeError(ErrorKind::InvalidParams, "negative payload size");
    for (int len = 3;; ++len) {
        if (is_pow2(len)) continue;
        int checks = 1;
        for (int p = 1; p < len; p <<= 1) ++checks;
        if (len - checks < k) continue;
        VtSystematic v;
        v.len_ = len;
        for (int p = 1; p < len; p <<= 1) v.checks_.push_back(p);
        v.checks_.push_back(len);
        for (int i = 1, c = 0; i <= len && static_cast<int>(v.data_.size()) < k; ++i) {
            if (c < static_cast<int>(v.checks_.size()) && v.checks_[c] == i) {
                ++c;
                continue;
            }
            v.data_.push_back(i);
        }
        return v;
    }
}

Word VtSystematic::encode(const std::vector<Symbol>& bits) const {
    if (bits.size() != data_.size()) throw CodeError(ErrorKind::IncompatibleLength, "payload size mismatch");
    std::vector<Symbol> x(len_, 0);
    std::int64_t s = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] > 1) throw CodeError(ErrorKind::Alphabet, "payload must be binary");
        x[data_[j] - 1] = bits[j];
        s += static_cast<std::int64_t>(data_[j]) * bits[j];
    }
    std::int64_t C = mod(-s, modulus());
    if (C >= len_) {
        x[len_ - 1] = 1;
        C -= len_;
    }
    for (int p = 1; p < len_; p <<= 1)
        if (C & p) x[p - 1] = 1;
    return Word(2, std::move(x));
}

std::vector<Symbol> VtSystematic::extract(const Word& x) const {
    std::vector<Symbol> bits(data_.size());
    for (std::size_t j = 0; j < data_.size(); ++j) bits[j] = x.s[data_[j] - 1];
    return bits;
}

std::vector<Symbol> VtSystematic::decode(const Word& y) const {
    return extract(vt_correct(y, len_, 0, modulus()));
}

}  // namespace synccodes
