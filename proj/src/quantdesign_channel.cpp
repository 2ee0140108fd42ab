/*
BPSK-AWGN channel quantizer designed with the IB method.

Channel LLR given x=0 is Gaussian with mean mu = 2/sigma^2 and variance
2*mu. The LLR density is discretized on a uniform grid, cell masses are
taken from exact normal-CDF differences, and the grid is quantized with
the DP quantizer. Thresholds are the grid cell edges at the cluster
boundaries, mirrored so they are symmetric about zero exactly.
*/

#include "polar/quantdesign.hpp"

#include <algorithm>
#include <cmath>

namespace polar {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

int ChannelQuantizer::map_llr(double llr) const
{
    int t = 0;
    for (double thr : thresholds) {
        if (llr < thr)
            break;
        ++t;
    }
    return t;
}

ChannelQuantizer design_channel_quantizer(double sigma, int alphabet_size, int grid_size)
{
    if (sigma <= 0.0)
        throw ParameterError("design_channel_quantizer: sigma must be positive");
    if (!is_pow2(alphabet_size) || alphabet_size < 2)
        throw ParameterError("design_channel_quantizer: alphabet size must be a power of two >= 2");
    if (grid_size < 8 * alphabet_size)
        throw ParameterError("design_channel_quantizer: grid too coarse for the alphabet");
    if (grid_size & 1)
        ++grid_size;

    double mu = 2.0 / (sigma * sigma);
    double sd = 2.0 / sigma; // LLR standard deviation
    double span = 4.0 * mu + 6.0 * sd;
    double step = 2.0 * span / grid_size;

    // upper-half cell masses under x=0; the lower half is the exact mirror
    int half = grid_size / 2;
    std::vector<double> up0(half), up1(half);
    for (int i = 0; i < half; ++i) {
        double lo = i * step;
        double hi = (i + 1) * step;
        up0[i] = 0.5 * (normal_cdf((hi - mu) / sd) - normal_cdf((lo - mu) / sd));
        up1[i] = 0.5 * (normal_cdf((-lo - mu) / sd) - normal_cdf((-hi - mu) / sd));
    }
    double mass = 0.0;
    for (int i = 0; i < half; ++i)
        mass += up0[i] + up1[i];
    double norm = 0.5 / mass;

    std::vector<SourceSymbol> grid(grid_size);
    for (int i = 0; i < half; ++i) {
        grid[half + i] = {up0[i] * norm, up1[i] * norm};
        grid[half - 1 - i] = {up1[i] * norm, up0[i] * norm};
    }

    auto q = ib_quantize(SymmetricSource::from_sorted_joint(grid), alphabet_size);

    ChannelQuantizer cq;
    cq.sigma = sigma;
    cq.dist = std::move(q.dist);
    cq.mutual_information = q.mutual_information;
    cq.alphabet.size = alphabet_size;
    cq.alphabet.labeling = Labeling::Natural;
    cq.alphabet.llr_values = cq.dist.llr_values();

    // boundaries are indices into the upper half; cell edge j sits at j*step
    cq.thresholds.assign(alphabet_size - 1, 0.0);
    int t2 = alphabet_size / 2;
    cq.thresholds[t2 - 1] = 0.0;
    for (int c = 1; c < t2; ++c) {
        double edge = q.boundaries[c] * step;
        cq.thresholds[t2 - 1 + c] = edge;
        cq.thresholds[t2 - 1 - c] = -edge;
    }
    return cq;
}

double awgn_capacity(double sigma)
{
    // I(X;Y) = 1 - E[log2(1 + e^-L)], L ~ N(mu, 2 mu); Simpson quadrature.
    double mu = 2.0 / (sigma * sigma);
    double sd = 2.0 / sigma;
    double lo = mu - 12.0 * sd, hi = mu + 12.0 * sd;
    int n = 20000; // even
    double h = (hi - lo) / n;
    auto f = [&](double l) {
        double pdf = std::exp(-(l - mu) * (l - mu) / (2.0 * sd * sd)) /
                     (sd * std::sqrt(2.0 * M_PI));
        double soft = l > 30.0 ? std::exp(-l) / std::log(2.0) : std::log2(1.0 + std::exp(-l));
        return pdf * soft;
    };
    double acc = f(lo) + f(hi);
    for (int i = 1; i < n; ++i)
        acc += f(lo + i * h) * (i & 1 ? 4.0 : 2.0);
    return 1.0 - acc * h / 3.0;
}

} // namespace polar
