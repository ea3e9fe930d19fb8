#pragma once

#include <cstdint>
#include <vector>

#include "synccodes/words.hpp"

namespace synccodes {

// Recovers x in {x in {0,1}^n : sum i x_i = a mod M} from y, which differs from x
// by at most one deletion, insertion or substitution. Deletions and insertions
// need M >= n+2, substitutions need M >= 2n+1. Throws NoCandidate otherwise.
Word vt_correct(const Word& y, int n, std::int64_t a, std::int64_t M);

// Systematic binary VT code of length len, modulus 2*len+1, residue 0.
// Check bits sit at the powers of two below len and at len itself.
class VtSystematic {
public:
    static VtSystematic for_payload(int k);

    int payload_bits() const { return static_cast<int>(data_.size()); }
    int length() const { return len_; }
    std::int64_t modulus() const { return 2 * static_cast<std::int64_t>(len_) + 1; }

    Word encode(const std::vector<Symbol>& bits) const;
    // y is a codeword hit by at most one edit
    std::vector<Symbol> decode(const Word& y) const;
    std::vector<Symbol> extract(const Word& x) const;

private:
    int len_ = 0;
    std::vector<int> checks_;  // 1-based, ascending, last one is len_
    std::vector<int> data_;    // 1-based
};

}  // namespace synccodes
