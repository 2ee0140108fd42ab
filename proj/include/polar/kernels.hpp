/*
Arithmetic personalities for the decoder block computations: floating
point, saturating fixed point, and LUT message passing.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <variant>

#include "polar/common.hpp"
#include "polar/quantdesign.hpp"

namespace polar {

inline double f_float(double a, double b)
{
    double m = std::min(std::abs(a), std::abs(b));
    return (a < 0.0) != (b < 0.0) ? -m : m; // sign(0) = +1
}

inline double g_float(double a, double b, int bit) { return bit ? b - a : b + a; }

// 2's-complement widths; saturation keeps the symmetric range so negation
// stays closed.
struct FixedFormat {
    int q_internal = 0;
    int q_channel = 0;

    int internal_max() const { return (1 << (q_internal - 1)) - 1; }
    int channel_max() const { return (1 << (q_channel - 1)) - 1; }
};

FixedFormat make_fixed_format(int q_internal, int q_channel);

inline int saturate(long v, int max_mag)
{
    if (v > max_mag)
        return max_mag;
    if (v < -max_mag)
        return -max_mag;
    return static_cast<int>(v);
}

inline int f_fixed(int a, int b)
{
    int m = std::min(std::abs(a), std::abs(b));
    return (a < 0) != (b < 0) ? -m : m;
}

inline int g_fixed(int a, int b, int bit, const FixedFormat& fmt)
{
    long s = bit ? static_cast<long>(b) - a : static_cast<long>(b) + a;
    return saturate(s, fmt.internal_max());
}

// round(llr * scale), half away from zero, clamped to the channel range
int quantize_channel_llr(double llr, const FixedFormat& fmt, double scale);

// Channel LLR scale giving the requested saturation probability at the
// design point (bisection on the Gaussian LLR tail).
double default_channel_scale(double sigma, const FixedFormat& fmt,
                             double saturation_prob = 0.01);

struct FloatKernel {
    using Msg = double;
    static constexpr const char* name = "float";

    Msg f(int /*node*/, Msg a, Msg b) const { return f_float(a, b); }
    Msg g(int /*node*/, Msg a, Msg b, int bit) const { return g_float(a, b, bit); }
    std::uint8_t hard(Msg m) const { return m >= 0.0 ? 0 : 1; }
    Msg from_llr(double llr) const { return llr; }
};

struct FixedKernel {
    using Msg = int;

    FixedFormat fmt;
    double scale = 1.0;

    Msg f(int /*node*/, Msg a, Msg b) const { return f_fixed(a, b); }
    Msg g(int /*node*/, Msg a, Msg b, int bit) const { return g_fixed(a, b, bit, fmt); }
    std::uint8_t hard(Msg m) const { return m >= 0 ? 0 : 1; }
    Msg from_llr(double llr) const { return quantize_channel_llr(llr, fmt, scale); }
};

struct LutKernel {
    using Msg = std::uint8_t;

    std::shared_ptr<const LutSet> luts;

    Msg f(int node, Msg a, Msg b) const
    {
        const auto& t = luts->f_tables[node];
        return t[a * luts->alphabet.size + b];
    }
    Msg g(int node, Msg a, Msg b, int bit) const
    {
        int k = luts->alphabet.size;
        return luts->g_tables[node][bit * k * k + a * k + b];
    }
    std::uint8_t hard(Msg m) const { return m >= luts->alphabet.size / 2 ? 0 : 1; }
    Msg from_llr(double llr) const
    {
        return static_cast<Msg>(luts->map_channel_llr(llr));
    }
};

// Bit-estimate combination, first half = beta_l ^ beta_r, second half =
// beta_r. With an all-zero beta_l this degenerates to [beta_r, beta_r].
BitVec combine(std::span<const std::uint8_t> beta_l, std::span<const std::uint8_t> beta_r);

} // namespace polar
