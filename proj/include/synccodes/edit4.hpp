#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "synccodes/sketches.hpp"
#include "synccodes/vt.hpp"
#include "synccodes/words.hpp"

namespace synccodes::edit4 {

struct Params {
    int n = 0;
    int logn = 0;
    WeightFn w;
    std::int64_t N = 1;

    static Params for_length(int n);
    // longest projected run allowed in a regular word
    int run_cap() const { return logn + 3; }
};

struct Sketch {
    std::int64_t f = 0;
    std::array<Symbol, 3> h{};  // parities of the counts of 0, 1, 2

    bool operator==(const Sketch&) const = default;
    auto operator<=>(const Sketch&) const = default;
};

Sketch sketch(const Word& x, const Params& p);
SketchTuple to_tuple(const Sketch& s, const Params& p);

struct RegularityWitness {
    std::vector<std::pair<int, int>> zero_runs;   // (start, length) in the 0/2 projection
    std::vector<std::pair<int, int>> three_runs;  // (start, length) in the 1/3 projection

    bool regular() const { return zero_runs.empty() && three_runs.empty(); }
};

RegularityWitness regularity(const Word& x, int n);
bool is_regular(const Word& x, int n);
bool membership(const Word& x, const Params& p, const Sketch& target);

Word correct_substitution(const Word& y, const Sketch& target, const Params& p);
Word correct_deletion(const Word& y, const Sketch& target, const Params& p);
Word correct_insertion(const Word& y, const Sketch& target, const Params& p);
// dispatch on |y|
Word correct(const Word& y, const Sketch& target, const Params& p);

Word rll_encode(const Word& z);
Word rll_decode(const Word& x);

class Codec {
public:
    static Codec for_message(int m);
    // smallest m whose codeword length is within one of len, trying exact fits first
    static std::vector<int> lengths_for(int len);

    int m() const { return m_; }
    int payload_length() const { return m_ + 4; }
    int tail_length() const { return vt_.length(); }
    int length() const { return payload_length() + tail_length(); }
    int sketch_bits() const { return f_bits_ + 3; }
    const Params& params() const { return params_; }

    Word encode(const Word& z) const;
    Word decode(const Word& y) const;
    Word tail(const Word& x) const;

private:
    int m_ = 0;
    int f_bits_ = 0;
    Params params_;
    VtSystematic vt_;
};

}  // namespace synccodes::edit4
