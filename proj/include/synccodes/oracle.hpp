#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "synccodes/words.hpp"

namespace synccodes::oracle {

inline constexpr int kMaxLength = 16;
inline constexpr int kReportSchema = 1;

using Membership = std::function<bool(const Word&)>;

struct Witness {
    Word y;
    std::vector<Word> sources;  // codewords in B(y), lexicographic
};

struct VerificationReport {
    ErrorModel model = ErrorModel::SingleEdit;
    int n = 0;
    int q = 2;
    std::size_t code_size = 0;
    double redundancy_bits = 0;
    std::size_t list_bound = 1;
    std::size_t max_list = 0;
    std::size_t violations = 0;
    std::vector<Witness> witnesses;  // first few violating y
    double runtime_ms = 0;

    bool ok() const { return violations == 0; }
    std::string to_json() const;
};

// Calls f on every length-n word over [0, q) in lexicographic order.
void for_each_word(int q, int n, const std::function<void(const Word&)>& f);

// n log2 q - log2 |C|; infinite for the empty code
double redundancy_bits(std::size_t code_size, int n, int q);

// Exhaustive |B(y) ∩ C| over every y the model can produce. Counting is done
// forward from each codeword's images, which visits exactly the y with a
// non-empty intersection.
VerificationReport verify_words(const std::vector<Word>& code, ErrorModel model, std::size_t list_bound, int n, int q = 2,
                                std::size_t max_witnesses = 8);
VerificationReport verify_code(const Membership& in_code, ErrorModel model, std::size_t list_bound, int n, int q = 2);

// Greedy code in lexicographic order: a word joins if its images meet no
// image of an earlier member.
std::vector<Word> search_inner_code(ErrorModel model, int len, int q = 2);

// One sketch-target bucket of a code family.
struct Bucket {
    std::string target;
    std::vector<Word> words;
};

// Every non-empty bucket of "vt", "edit4" or "delsub" at length n, ordered by target.
std::vector<Bucket> all_buckets(const std::string& family, int n);
// Largest bucket over all targets, ties to the smallest target.
Bucket best_bucket(const std::string& family, int n);
Bucket best_vt_bucket(int n);
Bucket best_edit4_bucket(int n);
Bucket best_delsub_bucket(int n);

ErrorModel family_model(const std::string& family);
std::size_t family_list_bound(const std::string& family);

// verify_words over every bucket; code_size is the largest bucket, max_list and
// violations are taken over the whole family.
VerificationReport verify_family(const std::string& family, int n);

struct Measurement {
    std::string family;
    int n = 0;
    int q = 2;
    std::string target;
    std::size_t size = 0;
    double redundancy_bits = 0;

    std::string to_json() const;
};

// The shipped deltrans code: list bound 1 plus a decode of every image.
// Decode mismatches count as violations with the image as witness.
VerificationReport verify_deltrans_desk();

double measure_redundancy(const Membership& in_code, int n, int q = 2);
Measurement measure(const std::string& family, int n);

// Fraction of uniform 4-ary words of length n that are regular.
double regular_fraction(int n, int trials, std::uint64_t seed);
// Fraction of uniform binary words of length n whose marker segments,
// unterminated tail included, all have length <= delta.
double short_segment_probability(int n, std::int64_t delta, int trials, std::uint64_t seed);

}  // namespace synccodes::oracle
