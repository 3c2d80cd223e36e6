#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "oscibath/common.hpp"

namespace oscibath {

/// Deterministic double in [0, 1) from the top 53 bits of a 64-bit draw.
/// Avoids distribution-template differences between standard libraries, so a
/// fixed seed gives bit-identical streams on every platform.
class UniformSampler {
public:
    explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}

    double next() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// In (0, 1]: safe as a log() argument.
    double next_positive() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 engine_;
};

/// Standard normal draws via the polar (Marsaglia) method on top of
/// UniformSampler. Rejection consumes a variable number of uniforms but is
/// fully deterministic for a fixed seed.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : uni_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uni_.next() - 1.0;
            v = 2.0 * uni_.next() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        have_spare_ = true;
        return u * scale;
    }

private:
    UniformSampler uni_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace oscibath
