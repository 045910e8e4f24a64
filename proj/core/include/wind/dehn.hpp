#pragma once

#include "wind/geometry.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wind {

// Word over the generators of Z^d plus a lazy step.  Letter encoding:
// 0 is lazy, +i / -i are +e_i / -e_i (1-based axis).  Lazy steps count
// toward the length n but contribute no displacement.
struct Word {
    int d = 2;
    std::vector<int> letters;

    std::vector<std::int64_t> endpoint() const;
    std::int64_t length() const {
        return static_cast<std::int64_t>(letters.size());
    }
};

// Minimal-length word representing -x (taxicab length), built greedily
// axis by axis.
struct ClosingWord {
    std::vector<std::int64_t> x;
    Word v;  // endpoint(v) == -x, length == ||x||_1
};
ClosingWord min_word(const std::vector<std::int64_t>& x);

// Uniform word of length n over the 2d non-lazy generators.
Word random_word(int d, std::int64_t n, std::uint64_t seed);

// Random-Dehn lower bound of a word w: close with v = min_word(endpoint),
// project w . v to the first two coordinates (zero-displacement steps
// contracted), and return max(0, total winding - 4 length(v)^2).
struct DehnBound {
    double total_winding = 0.0;
    std::int64_t closing_length = 0;
    double bound = 0.0;
};
DehnBound rnd_dehn_lower(const Word& w);

// Averaged lower bound over bridge-conditioned square-lattice walks
// (rejection sampling of S_n = 0); n must be even.
struct DehnAverage {
    std::int64_t n = 0;
    std::int64_t samples = 0;
    double mean = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};
DehnAverage avg_dehn_lower(std::int64_t n, std::int64_t samples,
                           std::uint64_t seed);

}  // namespace wind
