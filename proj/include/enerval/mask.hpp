#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "enerval/errors.hpp"
#include "enerval/rng.hpp"
#include "enerval/series.hpp"

namespace enerval {

struct MaskSpec {
    double ratio = 0.0;        // fraction of hours to mask, 0..1
    std::size_t start = 0;     // grid index where the masked block begins
    bool wrap = true;          // wrap the block around the period end
};

inline std::size_t round_half_away(double x) {
    return static_cast<std::size_t>(std::floor(x + 0.5));
}

// Contiguous missing block of exactly round_half_away(ratio*n) hours.
inline Mask block_mask(std::size_t n, const MaskSpec& spec) {
    if (n == 0) throw EmptyInput("empty grid");
    if (spec.start >= n) throw InternalError("mask start out of range");
    const std::size_t k = round_half_away(spec.ratio * static_cast<double>(n));
    if (k >= n) throw AllMissing("mask would cover the whole grid");
    Mask m(n, 1);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t i = spec.start + j;
        if (i < n) {
            m[i] = 0;
        } else if (spec.wrap) {
            m[i - n] = 0;
        }
        // wrap=false truncates at the period end; the masked count then
        // undershoots the ratio for late starts.
    }
    return m;
}

// MCAR baseline: isolated uniformly random missing hours.
inline Mask mcar_mask(std::size_t n, double ratio, Rng& rng) {
    if (n == 0) throw EmptyInput("empty grid");
    const std::size_t k = round_half_away(ratio * static_cast<double>(n));
    if (k >= n) throw AllMissing("mask would cover the whole grid");
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    Mask m(n, 1);
    for (std::size_t i = 0; i < k; ++i) m[idx[i]] = 0;
    return m;
}

// `count` start indices, uniform without replacement while count <= n
// (with replacement otherwise). Deterministic per seed.
inline std::vector<std::size_t> sample_starts(std::size_t n, std::size_t count,
                                              std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> out;
    out.reserve(count);
    if (count <= n) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(idx[i], idx[j]);
            out.push_back(idx[i]);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(static_cast<std::size_t>(rng.below(n)));
    }
    return out;
}

// Observed iff observed in both.
inline Mask compose_mask(const Mask& base, const Mask& synthetic) {
    if (base.size() != synthetic.size())
        throw InternalError("mask length mismatch in compose_mask");
    Mask out(base.size());
    std::size_t observed = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        out[i] = (base[i] && synthetic[i]) ? 1 : 0;
        observed += out[i];
    }
    if (observed == 0) throw AllMissing("composed mask has no observed points");
    return out;
}

}  // namespace enerval
