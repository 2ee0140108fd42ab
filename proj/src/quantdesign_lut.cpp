/*
Pair densities for the check-node (f) and variable-node (g) updates,
min-sum table closed form, the relabeled alphabet, and quantized density
evolution over the full decoder tree producing the per-edge tables.
*/

#include "polar/quantdesign.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <map>

#include <json.hpp>

namespace polar {

namespace {

inline int flip(int k, int t) { return k - 1 - t; }

void check_same_alphabet(const EdgeDistribution& a, const EdgeDistribution& b)
{
    if (a.size() != b.size() || a.size() < 2)
        throw DesignError("pair density: alphabet mismatch");
}

// Merged pair source for density evolution with a == b: symbols are
// equivalence classes with exactly-equal joints, so the DP sees a much
// smaller source. Mapping information is not preserved.
SymmetricSource merged_f_source(const EdgeDistribution& d)
{
    int k = d.size();
    std::vector<SourceSymbol> sym;
    std::vector<int> mirror;
    std::map<std::pair<int, int>, int> index;
    auto canon_f = [&](int ta, int tb) {
        std::pair<int, int> best{ta, tb};
        best = std::min(best, {tb, ta});
        best = std::min(best, {flip(k, ta), flip(k, tb)});
        best = std::min(best, {flip(k, tb), flip(k, ta)});
        return best;
    };
    for (int ta = 0; ta < k; ++ta) {
        for (int tb = 0; tb < k; ++tb) {
            if (canon_f(ta, tb) != std::make_pair(ta, tb))
                continue;
            std::array<std::pair<int, int>, 4> members{
                std::pair{ta, tb}, std::pair{tb, ta},
                std::pair{flip(k, ta), flip(k, tb)}, std::pair{flip(k, tb), flip(k, ta)}};
            std::sort(members.begin(), members.end());
            int cnt = static_cast<int>(
                std::unique(members.begin(), members.end()) - members.begin());
            double p0 = d.p0[ta] * d.p0[tb] + d.p1[ta] * d.p1[tb];
            double p1 = d.p1[ta] * d.p0[tb] + d.p0[ta] * d.p1[tb];
            sym.push_back({p0 * cnt, p1 * cnt});
            index[{ta, tb}] = static_cast<int>(sym.size()) - 1;
        }
    }
    mirror.resize(sym.size());
    for (const auto& [key, i] : index)
        mirror[i] = index.at(canon_f(flip(k, key.first), key.second));
    return SymmetricSource::from_orbits(sym, mirror);
}

SymmetricSource merged_g_source(const EdgeDistribution& d)
{
    int k = d.size();
    std::vector<SourceSymbol> sym;
    std::vector<int> mirror;
    std::map<std::pair<int, int>, int> index;
    auto canon_g = [&](int ta, int tb) {
        return std::make_pair(std::min(ta, tb), std::max(ta, tb));
    };
    for (int ta = 0; ta < k; ++ta) {
        for (int tb = ta; tb < k; ++tb) {
            int cnt = ta == tb ? 1 : 2;
            double p0 = 2.0 * d.p0[ta] * d.p0[tb];
            double p1 = 2.0 * d.p1[ta] * d.p1[tb];
            sym.push_back({p0 * cnt, p1 * cnt});
            index[{ta, tb}] = static_cast<int>(sym.size()) - 1;
        }
    }
    mirror.resize(sym.size());
    for (const auto& [key, i] : index)
        mirror[i] = index.at(canon_g(flip(k, key.first), flip(k, key.second)));
    return SymmetricSource::from_orbits(sym, mirror);
}

} // namespace

std::string to_string(LutVariant v)
{
    switch (v) {
    case LutVariant::Ib: return "ib";
    case LutVariant::MsIb: return "ms-ib";
    case LutVariant::ReMsIb: return "re-ms-ib";
    }
    return "?";
}

LutVariant lut_variant_from_string(const std::string& s)
{
    if (s == "ib")
        return LutVariant::Ib;
    if (s == "ms-ib")
        return LutVariant::MsIb;
    if (s == "re-ms-ib")
        return LutVariant::ReMsIb;
    throw ParameterError("unknown LUT variant: " + s);
}

JointDensity f_density(const EdgeDistribution& a, const EdgeDistribution& b)
{
    check_same_alphabet(a, b);
    int k = a.size();
    JointDensity jd;
    jd.alphabet_size = k;
    jd.symbols.resize(k * k);
    jd.keys.resize(k * k);
    std::vector<int> mirror(k * k);
    for (int ta = 0; ta < k; ++ta) {
        for (int tb = 0; tb < k; ++tb) {
            int key = ta * k + tb;
            jd.keys[key] = key;
            jd.symbols[key].p0 = a.p0[ta] * b.p0[tb] + a.p1[ta] * b.p1[tb];
            jd.symbols[key].p1 = a.p1[ta] * b.p0[tb] + a.p0[ta] * b.p1[tb];
            mirror[key] = flip(k, ta) * k + tb;
        }
    }
    jd.source = SymmetricSource::from_orbits(jd.symbols, mirror);
    return jd;
}

JointDensity g_density(const EdgeDistribution& a, const EdgeDistribution& b)
{
    check_same_alphabet(a, b);
    int k = a.size();
    JointDensity jd;
    jd.alphabet_size = k;
    jd.symbols.resize(k * k);
    jd.keys.resize(k * k);
    std::vector<int> mirror(k * k);
    // u_prev = 0 slice with doubled mass; the u_prev = 1 half is the exact
    // sign-flip image of this slice and is folded back in when the table
    // is materialized.
    for (int ta = 0; ta < k; ++ta) {
        for (int tb = 0; tb < k; ++tb) {
            int key = ta * k + tb;
            jd.keys[key] = key;
            jd.symbols[key].p0 = 2.0 * a.p0[ta] * b.p0[tb];
            jd.symbols[key].p1 = 2.0 * a.p1[ta] * b.p1[tb];
            mirror[key] = flip(k, ta) * k + flip(k, tb);
        }
    }
    jd.source = SymmetricSource::from_orbits(jd.symbols, mirror);
    return jd;
}

std::vector<std::uint8_t> minsum_lut(int alphabet_size)
{
    int k = alphabet_size;
    std::vector<std::uint8_t> table(k * k);
    for (int ta = 0; ta < k; ++ta) {
        for (int tb = 0; tb < k; ++tb) {
            int sa = 2 * ta - (k - 1); // doubled, odd, never zero
            int sb = 2 * tb - (k - 1);
            int mag = std::min(std::abs(sa), std::abs(sb));
            int out = (sa < 0) != (sb < 0) ? -mag : mag;
            table[ta * k + tb] = static_cast<std::uint8_t>((out + k - 1) / 2);
        }
    }
    return table;
}

std::vector<std::uint8_t> relabel_map(int alphabet_size)
{
    if (!is_pow2(alphabet_size))
        throw ParameterError("relabel_map: alphabet size must be a power of two");
    int k = alphabet_size;
    std::vector<std::uint8_t> rho(k);
    for (int t = 0; t < k; ++t)
        rho[t] = static_cast<std::uint8_t>(t < k / 2 ? k / 2 - 1 - t : t);
    return rho;
}

std::uint8_t minsum_circuit_natural(int alphabet_size, std::uint8_t ta, std::uint8_t tb)
{
    int nb = ilog2(alphabet_size);
    int low_mask = (1 << (nb - 1)) - 1;
    int sa = ta >> (nb - 1), sb = tb >> (nb - 1);
    int ma = sa ? (ta & low_mask) : (~ta & low_mask);
    int mb = sb ? (tb & low_mask) : (~tb & low_mask);
    int sign_xor = sa ^ sb;
    int so = sign_xor ^ 1; // inverted at the output
    int m = ma > mb ? mb : ma;
    int lo = so ? m : (~m & low_mask);
    return static_cast<std::uint8_t>((so << (nb - 1)) | lo);
}

std::uint8_t minsum_circuit_relabeled(int alphabet_size, std::uint8_t ta, std::uint8_t tb)
{
    int nb = ilog2(alphabet_size);
    int low_mask = (1 << (nb - 1)) - 1;
    int sa = ta >> (nb - 1), sb = tb >> (nb - 1);
    int so = (sa ^ sb) ^ 1; // XNOR of the MSBs
    int m = std::min(ta & low_mask, tb & low_mask);
    return static_cast<std::uint8_t>((so << (nb - 1)) | m);
}

int LutSet::map_channel_llr(double llr) const
{
    int t = channel.map_llr(llr);
    if (variant == LutVariant::ReMsIb)
        t = alphabet.size / 2 > t ? alphabet.size / 2 - 1 - t : t;
    return t;
}

namespace {

struct DeContext {
    int k = 0;
    int n = 0; // log2(N)
    LutVariant variant = LutVariant::Ib;
    bool build_tables = false;
    const std::vector<std::uint8_t>* shared_f = nullptr; // min-sum table
    std::vector<std::vector<std::uint8_t>>* f_tables = nullptr;
    std::vector<std::vector<std::uint8_t>>* g_tables = nullptr;
    std::vector<double>* leaf_perr = nullptr;
    int parallel_depth = 0;
};

// Child density when the f table is fixed to the min-sum form: push the
// exact pair joint through the table. Upper labels are accumulated and
// the lower half mirrored so the distribution symmetry stays exact.
EdgeDistribution push_through_minsum(const EdgeDistribution& d,
                                     const std::vector<std::uint8_t>& table)
{
    int k = d.size();
    EdgeDistribution out;
    out.p0.assign(k, 0.0);
    out.p1.assign(k, 0.0);
    for (int ta = 0; ta < k; ++ta) {
        for (int tb = 0; tb < k; ++tb) {
            int t = table[ta * k + tb];
            if (t < k / 2)
                continue;
            out.p0[t] += d.p0[ta] * d.p0[tb] + d.p1[ta] * d.p1[tb];
            out.p1[t] += d.p1[ta] * d.p0[tb] + d.p0[ta] * d.p1[tb];
        }
    }
    for (int t = k / 2; t < k; ++t) {
        out.p0[flip(k, t)] = out.p1[t];
        out.p1[flip(k, t)] = out.p0[t];
    }
    return out;
}

void evolve(const DeContext& ctx, const EdgeDistribution& dist, int node, int depth)
{
    if (depth == ctx.n) {
        (*ctx.leaf_perr)[node - (1 << ctx.n)] = dist.error_probability();
        return;
    }

    EdgeDistribution dist_l, dist_r;
    if (ctx.build_tables) {
        if (ctx.variant == LutVariant::Ib) {
            auto jd = f_density(dist, dist);
            auto q = ib_quantize(jd.source, ctx.k);
            auto& tbl = (*ctx.f_tables)[node];
            tbl.resize(ctx.k * ctx.k);
            for (int i = 0; i < ctx.k * ctx.k; ++i)
                tbl[i] = static_cast<std::uint8_t>(q.mapping[i]);
            dist_l = std::move(q.dist);
        } else {
            (*ctx.f_tables)[node] = *ctx.shared_f;
            dist_l = push_through_minsum(dist, *ctx.shared_f);
        }
        auto jd = g_density(dist, dist);
        auto q = ib_quantize(jd.source, ctx.k);
        auto& tbl = (*ctx.g_tables)[node];
        tbl.resize(2 * ctx.k * ctx.k);
        for (int ta = 0; ta < ctx.k; ++ta) {
            for (int tb = 0; tb < ctx.k; ++tb) {
                auto t0 = static_cast<std::uint8_t>(q.mapping[ta * ctx.k + tb]);
                tbl[ta * ctx.k + tb] = t0;
                tbl[ctx.k * ctx.k + flip(ctx.k, ta) * ctx.k + tb] = t0;
            }
        }
        dist_r = std::move(q.dist);
    } else {
        dist_l = ib_quantize(merged_f_source(dist), ctx.k).dist;
        dist_r = ib_quantize(merged_g_source(dist), ctx.k).dist;
    }

    if (depth < ctx.parallel_depth) {
        auto left = std::async(std::launch::async,
                               [&] { evolve(ctx, dist_l, 2 * node, depth + 1); });
        evolve(ctx, dist_r, 2 * node + 1, depth + 1);
        left.get();
    } else {
        evolve(ctx, dist_l, 2 * node, depth + 1);
        evolve(ctx, dist_r, 2 * node + 1, depth + 1);
    }
}

} // namespace

LutSet design_luts(int n_bits, const ChannelQuantizer& channel, LutVariant variant)
{
    if (!is_pow2(n_bits) || n_bits < 2)
        throw ParameterError("design_luts: N must be a power of two >= 2");
    int k = channel.alphabet.size;
    if (k > 256)
        throw DesignError("design_luts: table alphabet limited to 256 labels");

    LutSet set;
    set.variant = variant;
    set.alphabet = channel.alphabet;
    set.channel = channel;
    set.n_bits = n_bits;
    set.f_tables.resize(n_bits);
    set.g_tables.resize(n_bits);
    set.leaf_error_prob.assign(n_bits, 0.0);

    auto shared_f = minsum_lut(k);
    DeContext ctx;
    ctx.k = k;
    ctx.n = ilog2(n_bits);
    ctx.variant = variant;
    ctx.build_tables = true;
    ctx.shared_f = &shared_f;
    ctx.f_tables = &set.f_tables;
    ctx.g_tables = &set.g_tables;
    ctx.leaf_perr = &set.leaf_error_prob;
    ctx.parallel_depth = ctx.n >= 4 ? 2 : 0;
    evolve(ctx, channel.dist, 1, 0);

    if (variant == LutVariant::ReMsIb) {
        auto rho = relabel_map(k);
        for (int node = 1; node < n_bits; ++node) {
            std::vector<std::uint8_t> f(k * k), g(2 * k * k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    f[a * k + b] = rho[set.f_tables[node][rho[a] * k + rho[b]]];
                    for (int u = 0; u < 2; ++u)
                        g[u * k * k + a * k + b] =
                            rho[set.g_tables[node][u * k * k + rho[a] * k + rho[b]]];
                }
            set.f_tables[node] = std::move(f);
            set.g_tables[node] = std::move(g);
        }
        set.alphabet.labeling = Labeling::Relabeled;
        std::vector<double> llr(k);
        for (int t = 0; t < k; ++t)
            llr[rho[t]] = channel.alphabet.llr_values[t];
        set.alphabet.llr_values = std::move(llr);
    }
    return set;
}

std::vector<double> rank_bit_channels(int n_bits, double sigma, int fidelity, int grid_size)
{
    if (!is_pow2(n_bits) || n_bits < 2)
        throw ParameterError("rank_bit_channels: N must be a power of two >= 2");
    if (!is_pow2(fidelity) || fidelity < 16)
        throw ParameterError("rank_bit_channels: fidelity must be a power of two >= 16");
    if (grid_size <= 0)
        grid_size = std::max(2048, 8 * fidelity);

    auto channel = design_channel_quantizer(sigma, fidelity, grid_size);
    std::vector<double> perr(n_bits, 0.0);
    DeContext ctx;
    ctx.k = fidelity;
    ctx.n = ilog2(n_bits);
    ctx.build_tables = false;
    ctx.leaf_perr = &perr;
    ctx.parallel_depth = ctx.n >= 4 ? 2 : 0;
    evolve(ctx, channel.dist, 1, 0);
    return perr;
}

std::string LutSet::to_json() const
{
    nlohmann::json j;
    j["variant"] = to_string(variant);
    j["alphabet_size"] = alphabet.size;
    j["labeling"] = alphabet.labeling == Labeling::Natural ? "natural" : "relabeled";
    j["llr_values"] = alphabet.llr_values;
    j["n_bits"] = n_bits;
    j["design_sigma"] = channel.sigma;
    j["channel_thresholds"] = channel.thresholds;
    j["leaf_error_prob"] = leaf_error_prob;
    nlohmann::json nodes = nlohmann::json::object();
    for (int node = 1; node < n_bits; ++node) {
        nlohmann::json e;
        e["f"] = f_tables[node];
        e["g"] = g_tables[node];
        nodes[std::to_string(node)] = std::move(e);
    }
    j["nodes"] = std::move(nodes);
    return j.dump(1);
}

LutSet LutSet::from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    LutSet set;
    set.variant = lut_variant_from_string(j.at("variant").get<std::string>());
    set.alphabet.size = j.at("alphabet_size").get<int>();
    set.alphabet.labeling = j.at("labeling").get<std::string>() == "relabeled"
                                ? Labeling::Relabeled
                                : Labeling::Natural;
    set.alphabet.llr_values = j.at("llr_values").get<std::vector<double>>();
    set.n_bits = j.at("n_bits").get<int>();
    set.channel.sigma = j.at("design_sigma").get<double>();
    set.channel.thresholds = j.at("channel_thresholds").get<std::vector<double>>();
    set.channel.alphabet = set.alphabet;
    set.leaf_error_prob = j.at("leaf_error_prob").get<std::vector<double>>();
    set.f_tables.resize(set.n_bits);
    set.g_tables.resize(set.n_bits);
    for (int node = 1; node < set.n_bits; ++node) {
        const auto& e = j.at("nodes").at(std::to_string(node));
        set.f_tables[node] = e.at("f").get<std::vector<std::uint8_t>>();
        set.g_tables[node] = e.at("g").get<std::vector<std::uint8_t>>();
    }
    return set;
}

} // namespace polar
