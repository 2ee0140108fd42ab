#include "polar/code.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

namespace polar {

double PolarCode::design_sigma() const
{
    double sigma2 = 1.0 / (2.0 * rate() * std::pow(10.0, design_ebn0_db / 10.0));
    return std::sqrt(sigma2);
}

PolarCode PolarCode::with_frozen(int n_bits, std::vector<int> frozen, double design_ebn0_db)
{
    if (!is_pow2(n_bits))
        throw ParameterError("PolarCode: N must be a power of two");
    PolarCode c;
    c.n_bits = n_bits;
    c.n = ilog2(n_bits);
    c.design_ebn0_db = design_ebn0_db;
    std::sort(frozen.begin(), frozen.end());
    frozen.erase(std::unique(frozen.begin(), frozen.end()), frozen.end());
    c.frozen = std::move(frozen);
    c.k = n_bits - static_cast<int>(c.frozen.size());
    c.is_frozen.assign(n_bits, 0);
    for (int i : c.frozen) {
        if (i < 0 || i >= n_bits)
            throw ParameterError("PolarCode: frozen index out of range");
        c.is_frozen[i] = 1;
    }
    c.info_indices.reserve(c.k);
    for (int i = 0; i < n_bits; ++i)
        if (!c.is_frozen[i])
            c.info_indices.push_back(i);
    return c;
}

PolarCode construct(int n_bits, int k, double design_ebn0_db, int fidelity)
{
    if (!is_pow2(n_bits) || n_bits < 2)
        throw ParameterError("construct: N must be a power of two >= 2");
    if (k <= 0 || k > n_bits)
        throw ParameterError("construct: need 0 < k <= N");

    std::vector<int> frozen;
    if (k < n_bits) {
        double rate = static_cast<double>(k) / n_bits;
        double sigma = std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, design_ebn0_db / 10.0)));
        auto perr = rank_bit_channels(n_bits, sigma, fidelity);
        std::vector<int> order(n_bits);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (perr[a] != perr[b])
                return perr[a] > perr[b]; // least reliable first
            return a < b;                 // ties freeze the lower index
        });
        frozen.assign(order.begin(), order.begin() + (n_bits - k));
    }
    return PolarCode::with_frozen(n_bits, std::move(frozen), design_ebn0_db);
}

void polar_transform(std::span<std::uint8_t> bits)
{
    int n = static_cast<int>(bits.size());
    for (int step = 1; step < n; step <<= 1)
        for (int base = 0; base < n; base += 2 * step)
            for (int j = 0; j < step; ++j)
                bits[base + j] ^= bits[base + j + step];
}

BitVec encode_nonsystematic(const PolarCode& code, std::span<const std::uint8_t> u)
{
    if (static_cast<int>(u.size()) != code.n_bits)
        throw ParameterError("encode_nonsystematic: input length mismatch");
    BitVec x(u.begin(), u.end());
    polar_transform(x);
    return x;
}

BitVec encode_systematic(const PolarCode& code, std::span<const std::uint8_t> msg)
{
    if (static_cast<int>(msg.size()) != code.k)
        throw ParameterError("encode_systematic: message length mismatch");
    BitVec x(code.n_bits, 0);
    for (int i = 0; i < code.k; ++i)
        x[code.info_indices[i]] = msg[i];
    polar_transform(x);
    for (int i : code.frozen)
        x[i] = 0;
    polar_transform(x);
    return x;
}

namespace {

int build_node(DecoderTree& tree, const PolarCode& code, int lo, int hi, int heap)
{
    bool any_frozen = false, any_info = false;
    for (int i = lo; i < hi; ++i)
        (code.is_frozen[i] ? any_frozen : any_info) = true;

    int idx = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({NodeKind::Internal, hi - lo, lo, hi, heap});
    if (!any_info) {
        tree.nodes[idx].kind = NodeKind::Rate0;
    } else if (!any_frozen) {
        tree.nodes[idx].kind = NodeKind::Rate1;
    } else {
        int mid = lo + (hi - lo) / 2;
        int l = build_node(tree, code, lo, mid, 2 * heap);
        int r = build_node(tree, code, mid, hi, 2 * heap + 1);
        tree.nodes[idx].left = l;
        tree.nodes[idx].right = r;
    }
    return idx;
}

} // namespace

DecoderTree build_tree(const PolarCode& code)
{
    DecoderTree tree;
    tree.n_bits = code.n_bits;
    build_node(tree, code, 0, code.n_bits, 1);
    return tree;
}

std::string PolarCode::to_json() const
{
    nlohmann::json j;
    j["n_bits"] = n_bits;
    j["k"] = k;
    j["design_ebn0_db"] = design_ebn0_db;
    j["frozen"] = frozen;
    return j.dump(1);
}

PolarCode PolarCode::from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    auto code = with_frozen(j.at("n_bits").get<int>(), j.at("frozen").get<std::vector<int>>(),
                            j.at("design_ebn0_db").get<double>());
    if (code.k != j.at("k").get<int>())
        throw ParameterError("PolarCode: k inconsistent with frozen set");
    return code;
}

} // namespace polar
