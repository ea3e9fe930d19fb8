#pragma once

#include <cstdint>
#include <vector>

#include "synccodes/sketches.hpp"
#include "synccodes/words.hpp"

namespace synccodes::delsub {

// Codeword length n; moduli are taken from mod_n >= n so short words can
// share the sketch layout of a longer code.
struct Params {
    int n = 0;
    std::int64_t mod_n = 0;

    static Params for_length(int n, std::int64_t mod_n = -1);

    std::int64_t mod_f() const { return 3 * mod_n + 1; }
    std::int64_t mod_f1() const { return 12 * mod_n + 1; }
    std::int64_t mod_f2() const { return 16 * mod_n * mod_n + 1; }
    static constexpr std::int64_t mod_h = 5;
    static constexpr std::int64_t mod_hr = 13;

    // fixed-width serialization of a sketch
    int sketch_bits() const;
};

struct Sketch {
    std::int64_t f = 0;
    std::int64_t f1r = 0;
    std::int64_t f2r = 0;
    std::int64_t h = 0;
    std::int64_t hr = 0;

    bool operator==(const Sketch&) const = default;
    auto operator<=>(const Sketch&) const = default;
};

Sketch sketch(const Word& x, const Params& p);
SketchTuple to_tuple(const Sketch& s, const Params& p);
bool membership(const Word& x, const Params& p, const Sketch& target);

std::vector<Symbol> to_bits(const Sketch& s, const Params& p);
// false if a field does not fit its modulus
bool from_bits(const std::vector<Symbol>& bits, const Params& p, Sketch& out);

struct Classification {
    Symbol xd = 0;
    Symbol xe = 0;
    int run_delta = 0;
};

// Deleted and flipped bit values from h(x) - h(y), and the signed run-count change.
// Throws EmptyList when y cannot come from x by one deletion and one substitution.
Classification classify_error(const Sketch& x_sketch, const Word& y);

// Every codeword with sketch `target` that one deletion and one substitution
// (either may be absent) map onto y. Throws EmptyList if there is none.
std::vector<Word> list_decode(const Word& y, const Sketch& target, const Params& p);

// Systematic codec: z || b || R3(sigma), where b holds the sketch of z and
// sigma is the sketch of b under fixed moduli.
class Codec {
public:
    static constexpr int kInnerModN = 128;

    static Codec for_message(int m);

    int m() const { return m_; }
    int sketch_bits() const { return outer_.sketch_bits(); }
    int inner_bits() const { return inner_sigma_bits_; }
    int tail_length() const { return sketch_bits() + 3 * inner_bits(); }
    int length() const { return m_ + tail_length(); }

    Word encode(const Word& z) const;
    std::vector<Word> decode(const Word& y) const;

private:
    int m_ = 0;
    int inner_sigma_bits_ = 0;
    Params outer_;
    Params inner_;
};

// y within one deletion (if shorter) plus one substitution of x
bool within_del_sub(const Word& x, const Word& y);

}  // namespace synccodes::delsub
