#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace synccodes {

using Symbol = std::uint8_t;

enum class ErrorKind {
    OutOfRange,
    Alphabet,
    IncompatibleLength,
    SizeGuard,
    NoCandidate,
    MalformedEncoding,
    DecodeFailure,
    MissingTerminalMarker,
    RangeExhausted,
    LocateFailure,
    EmptyList,
    InvalidParams,
};

const char* to_string(ErrorKind k);

// Every domain failure in the library is one of these.
class CodeError : public std::runtime_error {
public:
    CodeError(ErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct Word {
    int q = 2;
    std::vector<Symbol> s;

    Word() = default;
    explicit Word(int q_, std::vector<Symbol> sym = {});

    // "0213" -> symbols; q == 0 infers max(2, max symbol + 1)
    static Word parse(std::string_view text, int q = 0);
    static Word zeros(int q, std::size_t n) { return Word(q, std::vector<Symbol>(n, 0)); }

    std::string str() const;
    std::size_t size() const { return s.size(); }
    bool empty() const { return s.empty(); }
    Symbol operator[](std::size_t i) const { return s[i]; }
    // 1-based access, matching the public index convention
    Symbol at(std::size_t i) const;

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;
};

struct NoError {
    bool operator==(const NoError&) const = default;
};
struct Deletion {
    int d;
    bool operator==(const Deletion&) const = default;
};
struct Insertion {
    int pos;  // new symbol lands at this index of the result, 1..n+1
    Symbol symbol;
    bool operator==(const Insertion&) const = default;
};
struct Substitution {
    int e;
    Symbol symbol;
    bool operator==(const Substitution&) const = default;
};
struct Transposition {
    int k;  // swaps x_k and x_{k+1}
    bool operator==(const Transposition&) const = default;
};
// x_e becomes `symbol`, then x_d is removed; both indices refer to the source word
struct DelAndSub {
    int d;
    int e;
    Symbol symbol;
    bool operator==(const DelAndSub&) const = default;
};

using ErrorPattern = std::variant<NoError, Deletion, Insertion, Substitution, Transposition, DelAndSub>;

// d == e collapses to a plain deletion
ErrorPattern make_del_sub(int d, int e, Symbol symbol);

std::string describe(const ErrorPattern& p);

enum class ErrorModel { SingleEdit, OneDelOneSub, OneDelOrOneTransposition };

const char* to_string(ErrorModel m);
ErrorModel parse_model(std::string_view name);

Word apply(const Word& x, const ErrorPattern& p);

// Every pattern the model allows on x, starting with NoError.
std::vector<ErrorPattern> patterns(const Word& x, ErrorModel model);

// Distinct corrupted words reachable from x, sorted.
std::vector<Word> images(const Word& x, ErrorModel model);

// Lengths a corrupted word may have for a source of length n.
std::vector<std::size_t> image_lengths(ErrorModel model, std::size_t n);

inline constexpr int kBallMaxLength = 16;

// B(y): all length-n words over the alphabet of y (or q) that the model maps onto y.
// Brute-force filtration over q^n sources; n is capped at kBallMaxLength.
std::vector<Word> error_ball(const Word& y, ErrorModel model, int n, int q = 0);

struct RunString {
    std::vector<int> r;  // r[0..n+1], r[0] = 0, sentinels x_0 = 0 and x_{n+1} = 1

    std::size_t n() const { return r.size() - 2; }
    int rank(std::size_t i) const { return r[i]; }
    // runs of 0 || x || 1
    int runs() const { return r.back() + 1; }
};

RunString run_string(const Word& x);
Word from_run_string(const RunString& rs);

Word prefix_parity(const Word& x);
Word prefix_parity_inverse(const Word& xbar);

void require_binary(const Word& x, const char* who);

}  // namespace synccodes
