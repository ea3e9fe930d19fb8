#include "synccodes/words.hpp"

#include <algorithm>
#include <sstream>

namespace synccodes {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::Alphabet: return "AlphabetMismatch";
        case ErrorKind::IncompatibleLength: return "IncompatibleLength";
        case ErrorKind::SizeGuard: return "SizeGuard";
        case ErrorKind::NoCandidate: return "NoCandidate";
        case ErrorKind::MalformedEncoding: return "MalformedEncoding";
        case ErrorKind::DecodeFailure: return "DecodeFailure";
        case ErrorKind::MissingTerminalMarker: return "MissingTerminalMarker";
        case ErrorKind::RangeExhausted: return "RangeExhausted";
        case ErrorKind::LocateFailure: return "LocateFailure";
        case ErrorKind::EmptyList: return "EmptyList";
        case ErrorKind::InvalidParams: return "InvalidParams";
    }
    return "Unknown";
}

Word::Word(int q_, std::vector<Symbol> sym) : q(q_), s(std::move(sym)) {
    if (q < 2 || q > 10) throw CodeError(ErrorKind::Alphabet, "alphabet size must be in [2, 10]");
    for (Symbol c : s)
        if (c >= q) throw CodeError(ErrorKind::Alphabet, "symbol outside alphabet");
}

Word Word::parse(std::string_view text, int q) {
    std::vector<Symbol> sym;
    sym.reserve(text.size());
    int top = 1;
    for (char c : text) {
        if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        if (c < '0' || c > '9') throw CodeError(ErrorKind::Alphabet, std::string("not a digit: ") + c);
        sym.push_back(static_cast<Symbol>(c - '0'));
        top = std::max(top, c - '0');
    }
    if (q == 0) q = std::max(2, top + 1);
    return Word(q, std::move(sym));
}

std::string Word::str() const {
    std::string out(s.size(), '0');
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = static_cast<char>('0' + s[i]);
    return out;
}

Symbol Word::at(std::size_t i) const {
    if (i < 1 || i > s.size()) throw CodeError(ErrorKind::OutOfRange, "index out of range");
    return s[i - 1];
}

ErrorPattern make_del_sub(int d, int e, Symbol symbol) {
    if (d == e) return Deletion{d};
    return DelAndSub{d, e, symbol};
}

std::string describe(const ErrorPattern& p) {
    std::ostringstream os;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, NoError>) os << "none";
            else if constexpr (std::is_same_v<T, Deletion>) os << "del:" << v.d;
            else if constexpr (std::is_same_v<T, Insertion>) os << "ins:" << v.pos << ':' << int(v.symbol);
            else if constexpr (std::is_same_v<T, Substitution>) os << "sub:" << v.e << ':' << int(v.symbol);
            else if constexpr (std::is_same_v<T, Transposition>) os << "trans:" << v.k;
            else os << "delsub:" << v.d << ':' << v.e << ':' << int(v.symbol);
        },
        p);
    return os.str();
}

const char* to_string(ErrorModel m) {
    switch (m) {
        case ErrorModel::SingleEdit: return "single-edit";
        case ErrorModel::OneDelOneSub: return "del-sub";
        case ErrorModel::OneDelOrOneTransposition: return "del-or-trans";
    }
    return "?";
}

ErrorModel parse_model(std::string_view name) {
    if (name == "single-edit") return ErrorModel::SingleEdit;
    if (name == "del-sub") return ErrorModel::OneDelOneSub;
    if (name == "del-or-trans") return ErrorModel::OneDelOrOneTransposition;
    throw CodeError(ErrorKind::InvalidParams, "unknown error model: " + std::string(name));
}

namespace {

void check_pos(long pos, long lo, long hi) {
    if (pos < lo || pos > hi) throw CodeError(ErrorKind::OutOfRange, "pattern position out of range");
}

void check_symbol(const Word& x, Symbol c) {
    if (c >= x.q) throw CodeError(ErrorKind::Alphabet, "pattern symbol outside alphabet");
}

}  // namespace

Word apply(const Word& x, const ErrorPattern& p) {
    const long n = static_cast<long>(x.size());
    Word y = x;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Deletion>) {
                check_pos(v.d, 1, n);
                y.s.erase(y.s.begin() + (v.d - 1));
            } else if constexpr (std::is_same_v<T, Insertion>) {
                check_pos(v.pos, 1, n + 1);
                check_symbol(x, v.symbol);
                y.s.insert(y.s.begin() + (v.pos - 1), v.symbol);
            } else if constexpr (std::is_same_v<T, Substitution>) {
                check_pos(v.e, 1, n);
                check_symbol(x, v.symbol);
                y.s[v.e - 1] = v.symbol;
            } else if constexpr (std::is_same_v<T, Transposition>) {
                check_pos(v.k, 1, n - 1);
                std::swap(y.s[v.k - 1], y.s[v.k]);
            } else if constexpr (std::is_same_v<T, DelAndSub>) {
                check_pos(v.d, 1, n);
                check_pos(v.e, 1, n);
                check_symbol(x, v.symbol);
                if (v.d == v.e) throw CodeError(ErrorKind::OutOfRange, "DelAndSub needs d != e");
                y.s[v.e - 1] = v.symbol;
                y.s.erase(y.s.begin() + (v.d - 1));
            }
        },
        p);
    return y;
}

std::vector<ErrorPattern> patterns(const Word& x, ErrorModel model) {
    const int n = static_cast<int>(x.size());
    std::vector<ErrorPattern> out;
    out.emplace_back(NoError{});
    switch (model) {
        case ErrorModel::SingleEdit:
            for (int d = 1; d <= n; ++d) out.emplace_back(Deletion{d});
            for (int e = 1; e <= n; ++e)
                for (int c = 0; c < x.q; ++c)
                    if (c != x.s[e - 1]) out.emplace_back(Substitution{e, static_cast<Symbol>(c)});
            for (int p = 1; p <= n + 1; ++p)
                for (int c = 0; c < x.q; ++c) out.emplace_back(Insertion{p, static_cast<Symbol>(c)});
            break;
        case ErrorModel::OneDelOneSub:
            for (int e = 1; e <= n; ++e)
                for (int c = 0; c < x.q; ++c)
                    if (c != x.s[e - 1]) out.emplace_back(Substitution{e, static_cast<Symbol>(c)});
            for (int d = 1; d <= n; ++d) {
                out.emplace_back(Deletion{d});
                for (int e = 1; e <= n; ++e) {
                    if (e == d) continue;
                    for (int c = 0; c < x.q; ++c)
                        if (c != x.s[e - 1]) out.emplace_back(DelAndSub{d, e, static_cast<Symbol>(c)});
                }
            }
            break;
        case ErrorModel::OneDelOrOneTransposition:
            for (int d = 1; d <= n; ++d) out.emplace_back(Deletion{d});
            for (int k = 1; k + 1 <= n; ++k) out.emplace_back(Transposition{k});
            break;
    }
    return out;
}

std::vector<Word> images(const Word& x, ErrorModel model) {
    std::vector<Word> out;
    for (const auto& p : patterns(x, model)) out.push_back(synccodes::apply(x, p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> image_lengths(ErrorModel model, std::size_t n) {
    switch (model) {
        case ErrorModel::SingleEdit:
            if (n == 0) return {0, 1};
            return {n - 1, n, n + 1};
        case ErrorModel::OneDelOneSub:
        case ErrorModel::OneDelOrOneTransposition:
            if (n == 0) return {0};
            return {n - 1, n};
    }
    return {};
}

std::vector<Word> error_ball(const Word& y, ErrorModel model, int n, int q) {
    if (q == 0) q = y.q;
    if (n < 0 || n > kBallMaxLength)
        throw CodeError(ErrorKind::SizeGuard, "error_ball is exhaustive; n must be <= 16");
    auto lens = image_lengths(model, static_cast<std::size_t>(n));
    if (std::find(lens.begin(), lens.end(), y.size()) == lens.end())
        throw CodeError(ErrorKind::IncompatibleLength, "received length incompatible with model and n");
    for (Symbol c : y.s)
        if (c >= q) throw CodeError(ErrorKind::Alphabet, "received word outside alphabet");

    std::vector<Word> ball;
    Word x(q, std::vector<Symbol>(n, 0));
    Word yy(q, y.s);
    while (true) {
        for (const auto& p : patterns(x, model)) {
            if (synccodes::apply(x, p) == yy) {
                ball.push_back(x);
                break;
            }
        }
        int i = n - 1;
        while (i >= 0 && x.s[i] == q - 1) x.s[i--] = 0;
        if (i < 0) break;
        ++x.s[i];
    }
    return ball;
}

void require_binary(const Word& x, const char* who) {
    if (x.q != 2) throw CodeError(ErrorKind::Alphabet, std::string(who) + " needs a binary word");
}

RunString run_string(const Word& x) {
    require_binary(x, "run_string");
    const std::size_t n = x.size();
    RunString rs;
    rs.r.assign(n + 2, 0);
    Symbol prev = 0;
    for (std::size_t i = 1; i <= n + 1; ++i) {
        Symbol cur = i <= n ? x.s[i - 1] : 1;
        rs.r[i] = rs.r[i - 1] + (cur != prev ? 1 : 0);
        prev = cur;
    }
    return rs;
}

Word from_run_string(const RunString& rs) {
    const std::size_t n = rs.n();
    Word x(2, std::vector<Symbol>(n, 0));
    Symbol cur = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        int step = rs.r[i] - rs.r[i - 1];
        if (step < 0 || step > 1) throw CodeError(ErrorKind::OutOfRange, "not a run string");
        if (step) cur ^= 1;
        x.s[i - 1] = cur;
    }
    return x;
}

Word prefix_parity(const Word& x) {
    require_binary(x, "prefix_parity");
    Word out = x;
    Symbol acc = 0;
    for (auto& c : out.s) {
        acc ^= c;
        c = acc;
    }
    return out;
}

Word prefix_parity_inverse(const Word& xbar) {
    require_binary(xbar, "prefix_parity_inverse");
    Word out = xbar;
    Symbol prev = 0;
    for (auto& c : out.s) {
        Symbol cur = c;
        c = cur ^ prev;
        prev = cur;
    }
    return out;
}

}  // namespace synccodes
