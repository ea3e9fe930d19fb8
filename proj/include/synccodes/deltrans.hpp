#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "synccodes/sketches.hpp"
#include "synccodes/words.hpp"

namespace synccodes::deltrans {

using Multiset = std::vector<std::int64_t>;  // sorted

struct Segmentation {
    std::vector<Word> segments;  // each ends in 0011, which occurs once
    std::vector<int> starts;     // 1-based start of each segment
    Word tail;                   // unterminated remainder, empty for words ending in 0011

    int count() const { return static_cast<int>(segments.size()); }
    int end(int j) const { return starts[j - 1] + static_cast<int>(segments[j - 1].size()) - 1; }
};

// Throws MissingTerminalMarker unless x ends in 0011.
Segmentation segment(const Word& x);
Segmentation segment_lenient(const Word& y);
int marker_count(const Word& x);

// Greedy hash over {0,1}^{<=cap}: words within two transpositions, two
// substitutions, or one deletion plus one insertion get different values.
// Longer words fall back to an arithmetic hash into the same range.
class HashTable {
public:
    static HashTable build(int cap, std::int64_t range);

    int cap() const { return cap_; }
    std::int64_t range() const { return range_; }
    std::int64_t colors_used() const { return used_; }
    std::int64_t operator()(const Word& z) const;

    std::string to_json() const;
    static HashTable from_json(const std::string& text);

private:
    int cap_ = 0;
    std::int64_t range_ = 0;
    std::int64_t used_ = 0;
    std::vector<std::int32_t> table_;  // index (1 << len) - 1 + value
};

// A(z) without z itself, restricted to lengths <= max_len.
std::vector<Word> neighbourhood(const Word& z, int max_len);

struct Interval {
    int a = 0;
    int b = 0;
    bool contains(int lo, int hi) const { return a <= lo && hi <= b; }
};

enum class LocateCase { Clean, Tail, Same, MinusOne, PlusOne, MinusTwo, PlusTwo };
const char* to_string(LocateCase c);

struct Params {
    std::string profile;
    int n = 0;
    int delta = 0;
    std::int64_t m = 0;
    std::int64_t L_mod = 0;
    // scan depth per case: the true segment is at most this far below the stop
    int k_del_minus = 0, k_del_plus = 0, k_trans_minus = 0, k_trans_plus = 0, k_two = 0;
    int L = 0;   // bound on every locate window
    int Lp = 0;  // inner sketch length 2L+1
    int fhat_width = 0;
    std::vector<Interval> family1, family2;

    // Derives all thresholds and the window plan; throws InvalidParams if an
    // inequality the decoder relies on fails.
    static Params derive(std::string profile, int n, int delta, std::int64_t m);
    void validate() const;
    int fhat_bits() const { return 2 * fhat_width; }
};

// Paper constants, used for statistics only.
struct PaperProfile {
    int n = 0;
    std::int64_t delta = 0;
    __int128 m = 0;
    __int128 L_mod = 0;
    __int128 L = 0;

    static PaperProfile for_length(int n);
};
std::string to_string(__int128 v);

struct Sketch {
    std::int64_t f = 0;
    int g1 = 0;
    int g2 = 0;
    std::vector<Symbol> ghat1, ghat2;

    bool operator==(const Sketch&) const = default;
    auto operator<=>(const Sketch&) const = default;
};

Multiset hash_multiset(const Segmentation& s, const HashTable& h);
std::int64_t segment_f(const Segmentation& s, const Params& p, const HashTable& h);
Sketch sketch(const Word& x, const Params& p, const HashTable& h);
SketchTuple to_tuple(const Sketch& s, const Params& p);

// Bits of (sum i z_i mod L'+1, sum i zbar_i mod 2L'+1), each field `width` bits.
std::vector<Symbol> inner_sketch(const Word& z, int Lp, int width);
// Recovers z of length Lp from y (one deletion or one transposition at most).
Word inner_correct(const Word& y, const std::vector<Symbol>& fhat, int Lp, int width);
std::vector<Symbol> window_sketch(const Word& x, const std::vector<Interval>& family, int Lp, int width);

struct Window {
    LocateCase kind = LocateCase::Clean;
    bool deletion = false;
    int lo = 0;  // 1-based, inclusive; empty when clean
    int hi = -1;
    std::vector<std::int64_t> trace;  // potential values in scan order, merge/split cases only

    int size() const { return hi >= lo ? hi - lo + 1 : 0; }
};

Window locate(const Word& y, const Sketch& xs, const Multiset& Hx, const Params& p, const HashTable& h);
Word correct(const Word& y, const Sketch& xs, const Multiset& Hx, const Params& p, const HashTable& h);

std::size_t sym_diff(const Multiset& a, const Multiset& b);
// The code multiset within 4 of Hy; throws LocateFailure if there is none.
const Multiset& recover_multiset(const Multiset& Hy, const std::vector<Multiset>& code_sets);

// Greedy over (multiset, population) buckets: most populated first, ties to the
// smaller multiset; a bucket closer than min_distance to a kept one is dropped.
std::vector<Multiset> expurgate_sets(std::vector<std::pair<Multiset, std::size_t>> buckets, std::size_t min_distance = 10);
// Keeps the most populated multiset buckets so distinct survivors differ in >= 10 elements.
std::vector<Word> expurgate(const std::vector<Word>& words, const HashTable& h, std::size_t min_distance = 10);

// Words of length n ending in 0011 whose segments are all at most delta long.
std::vector<Word> segment_domain(int n, int delta);

struct MarkerChange {
    int created = 0;
    int destroyed = 0;
    bool destroyed_consecutive = true;
    bool created_consecutive = true;
};
// d is moved to the first bit of its 0-run or the last bit of its 1-run.
MarkerChange marker_change_deletion(const Word& x, int d);
MarkerChange marker_change_transposition(const Word& x, int k);
int canonical_deletion(const Word& x, int d);

struct FamilyCode {
    Sketch target;
    std::vector<Word> words;
};

// Every final code: bucket the domain by (f, g1, g2), expurgate each bucket,
// then split by the window sketches. Ordered by target.
std::vector<FamilyCode> code_family(const std::vector<Word>& domain, const Params& p, const HashTable& h);

// The shipped desk code: largest final code over the whole (f, g1, g2, ghat) family.
struct DeskCode {
    static constexpr int kN = 20;
    static constexpr int kDelta = 12;

    HashTable hash;
    Params params;
    Sketch target;
    std::vector<Word> words;
    std::vector<Multiset> multisets;  // distinct hash multisets of the code

    static DeskCode build();

    int message_bits() const;
    Word encode(std::uint64_t index) const;
    Word decode(const Word& y) const;
};

}  // namespace synccodes::deltrans
