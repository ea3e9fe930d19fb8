#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "synccodes/words.hpp"

namespace synccodes {

struct ModularValue {
    std::int64_t value = 0;
    std::int64_t modulus = 1;

    bool operator==(const ModularValue&) const = default;
};

ModularValue mod_value(std::int64_t v, std::int64_t modulus);

// Representative of a - b in (-M/2, M/2]; moduli must agree.
std::int64_t signed_diff(const ModularValue& a, const ModularValue& b);
std::int64_t signed_rep(std::int64_t v, std::int64_t modulus);

struct WeightFn {
    std::vector<std::int64_t> w;

    int q() const { return static_cast<int>(w.size()); }
    std::int64_t operator()(Symbol c) const { return w[c]; }
};

WeightFn identity_weights(int q);

// ceil(log2 n), with 0 for n <= 1
int ceil_log2(std::int64_t n);
// number of binary digits needed to write values in [0, M)
int bits_for(std::int64_t modulus);

ModularValue vt(const Word& x, std::int64_t N);
ModularValue weighted_vt(const Word& x, const WeightFn& w, std::int64_t N);
ModularValue count_mod(const Word& x, Symbol c, std::int64_t M);
ModularValue weight_mod(const Word& x, std::int64_t M);

struct RunSketches {
    ModularValue f1r;
    ModularValue f2r;
    ModularValue hr;
};

// Moduli 12*mod_n+1, 16*mod_n^2+1 and 13; mod_n defaults to |x|.
RunSketches run_sketches(const Word& x, std::int64_t mod_n = -1);

// Sum of prefix parities mod 3.
ModularValue g2(const Word& x);
// Sum of i times prefix parity, mod M.
ModularValue parity_vt(const Word& x, std::int64_t M);

using SketchTuple = std::map<std::string, ModularValue>;

std::string format(const SketchTuple& t);

}  // namespace synccodes
