/*
Dynamic-programming quantizer for binary-input symmetric sources.

The optimum over contiguous partitions of an LLR-sorted source is found
with a suffix DP whose per-layer argmax is computed by divide and conquer
(the interval cost satisfies the quadrangle inequality, so split points
are monotone). Symmetry is enforced structurally: the DP runs on the
positive half only and the negative half is mirrored, which keeps the
alphabet anti-symmetry exact in floating point.
*/

#include "polar/quantdesign.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace polar {

namespace {

constexpr double kLlrClamp = 1e9;

double safe_llr(double p0, double p1)
{
    if (p0 == p1)
        return 0.0;
    if (p0 > 0.0 && p1 > 0.0) {
        double l = std::log(p0 / p1);
        return std::clamp(l, -kLlrClamp, kLlrClamp);
    }
    if (p0 > 0.0)
        return kLlrClamp;
    if (p1 > 0.0)
        return -kLlrClamp;
    return 0.0;
}

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// DP over the upper half: partition items [0, H) into T contiguous
// non-empty clusters maximizing sum of phi(A)+phi(B)-phi(A+B).
struct HalfDp {
    const std::vector<SymmetricSource::Item>& items;
    int H;
    std::vector<double> pa, pb; // prefix sums

    explicit HalfDp(const std::vector<SymmetricSource::Item>& it)
        : items(it), H(static_cast<int>(it.size())), pa(H + 1, 0.0), pb(H + 1, 0.0)
    {
        for (int i = 0; i < H; ++i) {
            pa[i + 1] = pa[i] + items[i].p0;
            pb[i + 1] = pb[i] + items[i].p1;
        }
    }

    double cost(int i, int j) const
    {
        double a = pa[j] - pa[i];
        double b = pb[j] - pb[i];
        return xlogx(a) + xlogx(b) - xlogx(a + b);
    }

    // W[t][i]: best value covering items [i, H) with t clusters.
    // Layers stored densely; layer t valid for i in [0, H - t].
    std::vector<std::vector<double>> solve(int T)
    {
        std::vector<std::vector<double>> w(T + 1, std::vector<double>(H + 1, 0.0));
        for (int i = 0; i <= H - 1; ++i)
            w[1][i] = cost(i, H);
        for (int t = 2; t <= T; ++t)
            layer(w[t], w[t - 1], t, 0, H - t, 1, H - (t - 1));
        return w;
    }

private:
    // Divide-and-conquer over i with monotone best split points.
    void layer(std::vector<double>& cur, const std::vector<double>& prev, int t,
               int ilo, int ihi, int jlo, int jhi)
    {
        if (ilo > ihi)
            return;
        int mid = ilo + (ihi - ilo) / 2;
        double best = -std::numeric_limits<double>::infinity();
        int bestj = -1;
        int from = std::max(mid + 1, jlo);
        for (int j = from; j <= jhi; ++j) {
            double v = cost(mid, j) + prev[j];
            if (v > best) {
                best = v;
                bestj = j;
            }
        }
        cur[mid] = best;
        layer(cur, prev, t, ilo, mid - 1, jlo, bestj);
        layer(cur, prev, t, mid + 1, ihi, bestj, jhi);
    }
};

} // namespace

double EdgeDistribution::llr(int t) const { return safe_llr(p0[t], p1[t]); }

std::vector<double> EdgeDistribution::llr_values() const
{
    std::vector<double> v(p0.size());
    for (int t = 0; t < size(); ++t)
        v[t] = llr(t);
    return v;
}

double EdgeDistribution::total_mass() const
{
    double s = 0.0;
    for (int t = 0; t < size(); ++t)
        s += p0[t] + p1[t];
    return s;
}

double EdgeDistribution::error_probability() const
{
    double e = 0.0;
    for (int t = 0; t < size(); ++t)
        e += std::min(p0[t], p1[t]);
    return e;
}

SymmetricSource SymmetricSource::from_sorted_joint(const std::vector<SourceSymbol>& joint)
{
    int m = static_cast<int>(joint.size());
    SymmetricSource src;
    src.n_orig = m;
    int half = m / 2;
    src.upper.reserve(half + (m & 1));
    if (m & 1) {
        // zero-LLR center atom, split evenly across the two sides
        const auto& c = joint[half];
        src.upper.push_back({c.p0 * 0.5, c.p1 * 0.5, 0.0, half, half, true});
    }
    for (int i = (m + 1) / 2; i < m; ++i) {
        const auto& s = joint[i];
        src.upper.push_back({s.p0, s.p1, safe_llr(s.p0, s.p1), i, m - 1 - i, false});
    }
    return src;
}

SymmetricSource SymmetricSource::from_orbits(const std::vector<SourceSymbol>& symbols,
                                             const std::vector<int>& mirror)
{
    int m = static_cast<int>(symbols.size());
    SymmetricSource src;
    src.n_orig = m;
    src.upper.reserve(m / 2 + 1);
    for (int i = 0; i < m; ++i) {
        int j = mirror[i];
        const auto& s = symbols[i];
        if (j == i) {
            src.upper.push_back({s.p0 * 0.5, s.p1 * 0.5, 0.0, i, i, true});
            continue;
        }
        if (s.p0 > s.p1) {
            src.upper.push_back({s.p0, s.p1, safe_llr(s.p0, s.p1), i, j, false});
        } else if (s.p0 == s.p1 && i > j) {
            // zero-LLR orbit: the higher-index member represents the upper side
            src.upper.push_back({s.p0, s.p1, 0.0, i, j, false});
        }
    }
    std::sort(src.upper.begin(), src.upper.end(), [](const Item& a, const Item& b) {
        if (a.llr != b.llr)
            return a.llr < b.llr;
        return a.orig < b.orig;
    });
    return src;
}

QuantizeResult ib_quantize(const SymmetricSource& source, int target_size)
{
    if (!is_pow2(target_size) || target_size < 2)
        throw ParameterError("ib_quantize: target alphabet size must be a power of two >= 2");
    int K = target_size;
    int T = K / 2;
    int H = static_cast<int>(source.upper.size());
    if (H < T)
        throw DesignError("ib_quantize: source alphabet smaller than target");

    HalfDp dp(source.upper);
    auto w = dp.solve(T);

    // Reconstruct the lexicographically smallest boundary set from the
    // front; exact equality holds because the same expressions were
    // evaluated when filling the DP table.
    std::vector<int> bounds(T + 1, 0);
    bounds[T] = H;
    int i = 0;
    for (int t = T; t >= 2; --t) {
        int cut = -1;
        for (int j = i + 1; j <= H - (t - 1); ++j) {
            if (dp.cost(i, j) + w[t - 1][j] == w[t][i]) {
                cut = j;
                break;
            }
        }
        assert(cut > 0);
        bounds[T - t + 1] = cut;
        i = cut;
    }

    QuantizeResult res;
    res.boundaries = bounds;
    res.mapping.assign(source.n_orig, -1);
    res.dist.p0.assign(K, 0.0);
    res.dist.p1.assign(K, 0.0);

    for (int c = 0; c < T; ++c) {
        int upper_label = K / 2 + c;
        int lower_label = K - 1 - upper_label;
        double a = 0.0, b = 0.0;
        for (int j = bounds[c]; j < bounds[c + 1]; ++j) {
            const auto& it = source.upper[j];
            a += it.p0;
            b += it.p1;
            if (it.split) {
                res.mapping[it.orig] = lower_label; // split atom owned by the lower side
            } else {
                res.mapping[it.orig] = upper_label;
                res.mapping[it.mirror_orig] = lower_label;
            }
        }
        res.dist.p0[upper_label] = a;
        res.dist.p1[upper_label] = b;
        res.dist.p0[lower_label] = b; // mirrored exactly
        res.dist.p1[lower_label] = a;
    }

    double half_nats = 0.0;
    for (int c = 0; c < T; ++c)
        half_nats += dp.cost(bounds[c], bounds[c + 1]);
    double total = res.dist.total_mass();
    res.mutual_information = 2.0 * half_nats / std::log(2.0) + total;
    return res;
}

QuantizeResult ib_quantize(const std::vector<SourceSymbol>& sorted_joint, int target_size)
{
    if (static_cast<int>(sorted_joint.size()) < target_size)
        throw DesignError("ib_quantize: fewer source symbols than target alphabet");
    double total = 0.0;
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& s : sorted_joint) {
        if (s.p0 < 0.0 || s.p1 < 0.0)
            throw ParameterError("ib_quantize: negative probability mass");
        total += s.p0 + s.p1;
        double l = safe_llr(s.p0, s.p1);
        if (l < prev)
            throw ParameterError("ib_quantize: source not sorted by LLR");
        prev = l;
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw ParameterError("ib_quantize: source pmf not normalized");
    return ib_quantize(SymmetricSource::from_sorted_joint(sorted_joint), target_size);
}

} // namespace polar
