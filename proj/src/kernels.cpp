#include "polar/kernels.hpp"

namespace polar {

FixedFormat make_fixed_format(int q_internal, int q_channel)
{
    if (q_channel < 2 || q_internal < q_channel)
        throw ParameterError("FixedFormat: need q_internal >= q_channel >= 2");
    return {q_internal, q_channel};
}

int quantize_channel_llr(double llr, const FixedFormat& fmt, double scale)
{
    if (scale <= 0.0)
        throw ParameterError("quantize_channel_llr: scale must be positive");
    double r = std::round(llr * scale); // half away from zero
    int max_mag = fmt.channel_max();
    if (r > max_mag)
        return max_mag;
    if (r < -max_mag)
        return -max_mag;
    return static_cast<int>(r);
}

double default_channel_scale(double sigma, const FixedFormat& fmt, double saturation_prob)
{
    double mu = 2.0 / (sigma * sigma);
    double sd = 2.0 / sigma;
    auto tail = [](double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); };
    // P(|L| > thr) under either bit value
    auto sat = [&](double thr) { return tail((thr - mu) / sd) + tail((thr + mu) / sd); };
    double lo = 0.0, hi = mu + 40.0 * sd;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (sat(mid) > saturation_prob ? lo : hi) = mid;
    }
    return (fmt.channel_max() + 0.5) / hi;
}

BitVec combine(std::span<const std::uint8_t> beta_l, std::span<const std::uint8_t> beta_r)
{
    if (beta_l.size() != beta_r.size())
        throw ParameterError("combine: half lengths differ");
    BitVec out(2 * beta_r.size());
    for (size_t i = 0; i < beta_r.size(); ++i) {
        out[i] = beta_l[i] ^ beta_r[i];
        out[i + beta_r.size()] = beta_r[i];
    }
    return out;
}

} // namespace polar
