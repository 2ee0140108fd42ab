/*
Polar code definition, non-systematic and systematic encoding, and the
pruned SSC decoder tree.
*/

#pragma once

#include <span>
#include <string>
#include <vector>

#include "polar/common.hpp"
#include "polar/quantdesign.hpp"

namespace polar {

struct PolarCode {
    int n_bits = 0; // N
    int k = 0;
    int n = 0; // log2(N)
    double design_ebn0_db = 0.0;
    std::vector<int> frozen;            // sorted indices, size N-k
    std::vector<std::uint8_t> is_frozen; // mask, size N
    std::vector<int> info_indices;      // sorted, size k

    double rate() const { return static_cast<double>(k) / n_bits; }
    double design_sigma() const;

    static PolarCode with_frozen(int n_bits, std::vector<int> frozen,
                                 double design_ebn0_db = 0.0);

    std::string to_json() const;
    static PolarCode from_json(const std::string& text);
};

// Freezes the N-k least reliable bit channels under quantized density
// evolution at the design point; ties freeze the lower index.
PolarCode construct(int n_bits, int k, double design_ebn0_db, int fidelity = 256);

BitVec encode_nonsystematic(const PolarCode& code, std::span<const std::uint8_t> u);
BitVec encode_systematic(const PolarCode& code, std::span<const std::uint8_t> msg);

// In-place butterfly x = u F^(x)n over GF(2); involution.
void polar_transform(std::span<std::uint8_t> bits);

enum class NodeKind { Rate0, Rate1, Internal };

struct DecoderTree {
    struct Node {
        NodeKind kind;
        int length; // N_v
        int lo, hi; // leaf index range [lo, hi)
        int heap;   // full-tree heap index (root = 1)
        int left = -1, right = -1; // child node indices, Internal only
    };
    std::vector<Node> nodes; // node 0 is the root
    int n_bits = 0;

    const Node& root() const { return nodes.front(); }
};

DecoderTree build_tree(const PolarCode& code);

inline LutSet design_luts(const PolarCode& code, const ChannelQuantizer& channel,
                          LutVariant variant)
{
    return design_luts(code.n_bits, channel, variant);
}

} // namespace polar
