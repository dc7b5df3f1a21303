#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfaffine/system.hpp"

namespace selfaffine {

// Digit string of a point t in [0,1]: t lies in the nested basic intervals
// selected by the (1-based) digits.  An eventually periodic coding stores a
// finite prefix and a repeating tail; an empty tail means the coding is a
// finite truncation.
struct Coding {
    std::vector<int> prefix;
    std::vector<int> tail;

    bool periodic() const { return !tail.empty(); }
    std::size_t digit_count() const { return prefix.size(); }  // finite codings
    // k is 0-based; requires k < prefix.size() unless periodic.
    int digit(std::size_t k) const;
    std::vector<int> first_digits(std::size_t n) const;
};

// Canonical form: minimal tail period, maximal absorption of prefix digits
// into the tail rotation.  Equal points get equal canonical forms.
Coding canonicalized(Coding cd);
bool coding_equal(const Coding& a, const Coding& b);
// Lexicographic comparison of the digit sequences (-1, 0, +1).  Finite
// codings compare as truncations padded with digit 0 (shorter < longer).
int coding_compare(const Coding& a, const Coding& b);

// Text form "prefix|tail".  Digits 1..9 are '1'..'9', 10..35 are 'A'..'Z',
// 36 is '0' (m <= 36).  Missing '|' or empty tail means a finite coding.
Coding parse_coding(const std::string& text, std::size_t m);
std::string format_coding(const Coding& cd);

// Map digit i to m+1-i everywhere (coding of 1-t in the reversed system).
Coding relabel_reversed(const Coding& cd, std::size_t m);

struct BasicInterval {
    std::vector<int> digits;
    double left = 0.0;
    double right = 1.0;
    double length() const { return right - left; }
};

// Interval phi_{i1}(phi_{i2}(... [0,1])) addressed by a digit string.
BasicInterval interval_of(const SelfAffineSystem& sys, const std::vector<int>& digits);

// Codings of the endpoints 0 and 1 (each has exactly one).
Coding coding_of_zero(const SelfAffineSystem& sys);
Coding coding_of_one(const SelfAffineSystem& sys);

struct CodingResult {
    Coding standard;                // lexicographically largest coding
    std::optional<Coding> alternate;  // second coding at interior branch points
    bool exact = false;             // full coding recovered, not a truncation
};

// Digit expansion of t.  Branch points (endpoints of basic intervals) are
// detected within 1e-13 of the boundary and return both codings exactly;
// elsewhere the walk stops after `depth` digits or when the remaining
// interval is too small to resolve against the boundary tolerance.
CodingResult standard_coding(const SelfAffineSystem& sys, double t, std::size_t depth = 48);

// If the coding belongs to an interval endpoint, returns both codings of
// that point as (via smaller digit, via larger digit); t=0 and t=1 return
// their single coding twice.  Otherwise nullopt.
std::optional<std::pair<Coding, Coding>> endpoint_codings(const SelfAffineSystem& sys,
                                                          const Coding& cd);

struct DigitStats {
    std::size_t n = 0;
    std::vector<std::size_t> counts;  // counts[i-1] = occurrences of digit i
    std::size_t run_len = 0;          // trailing run of the last digit m
    std::optional<int> chi;           // nullopt when the whole prefix is that run
};

// Statistics of the first n digits used by the finite-prefix exponent
// estimator.  chi is 1 when the trailing run presses against a neighboring
// interval that continues with the same time direction and a nonzero map.
DigitStats digit_stats(const SelfAffineSystem& sys, const Coding& cd, std::size_t n);

// Limiting digit frequencies of a periodic coding (tail only), length m.
std::vector<double> digit_frequencies(const SelfAffineSystem& sys, const Coding& cd);

}  // namespace selfaffine
