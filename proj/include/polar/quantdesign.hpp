/*
Information-bottleneck quantizer design, AWGN channel quantizer,
quantized density evolution over the polar decoder tree, and
generation of the decoding look-up tables (ib / ms-ib / re-ms-ib).
*/

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polar/common.hpp"

namespace polar {

enum class Labeling { Natural, Relabeled };
enum class LutVariant { Ib, MsIb, ReMsIb };

std::string to_string(LutVariant v);
LutVariant lut_variant_from_string(const std::string& s);

// Finite message alphabet. Under Natural labeling the per-message LLR
// meanings are strictly increasing and anti-symmetric about the center;
// the first half of the labels carries negative LLRs, the second half
// positive ones. Under Relabeled labeling the same values are indexed
// through the relabel permutation.
struct MessageAlphabet {
    int size = 0;
    Labeling labeling = Labeling::Natural;
    std::vector<double> llr_values;
};

// Joint pmf p(x, t) over the bit x in {0,1} and a message label t.
// All-zero-codeword symmetrization is assumed: p(x=0) = p(x=1) = 1/2 and
// p0[size-1-t] == p1[t] holds exactly (distributions are built by
// mirroring the upper half).
struct EdgeDistribution {
    std::vector<double> p0, p1;

    int size() const { return static_cast<int>(p0.size()); }
    double llr(int t) const;
    std::vector<double> llr_values() const;
    double total_mass() const;
    // probability of a MAP bit error when deciding from the label alone
    double error_probability() const;
};

// One symbol of a binary-input source to be quantized.
struct SourceSymbol {
    double p0 = 0.0; // joint mass with x = 0
    double p1 = 0.0; // joint mass with x = 1
};

// A symmetric source arranged for the quantizer: only the positive-LLR
// half is stored, lowest LLR first; the negative half is implied by
// mirroring. `orig` / `mirror_orig` track caller symbol indices so the
// mapping can be reported in the caller's order. A self-mirrored symbol
// (zero-LLR atom of an odd source) is stored with half its mass and
// flagged split; its original maps to the lower center cluster.
struct SymmetricSource {
    struct Item {
        double p0, p1;
        double llr;
        int orig;        // original index of this (upper-side) symbol
        int mirror_orig; // original index of its mirror, == orig when split
        bool split;
    };
    std::vector<Item> upper; // ascending LLR
    int n_orig = 0;

    static SymmetricSource from_sorted_joint(const std::vector<SourceSymbol>& joint);
    static SymmetricSource from_orbits(const std::vector<SourceSymbol>& symbols,
                                       const std::vector<int>& mirror);
};

struct QuantizeResult {
    std::vector<int> mapping;    // original symbol index -> label
    EdgeDistribution dist;       // quantized joint, |T| labels
    double mutual_information;   // I(X;T) in bits
    std::vector<int> boundaries; // upper-half cluster boundaries (item indices)
};

// Optimal deterministic quantizer maximizing I(X;T) over contiguous,
// symmetric partitions of an LLR-sorted source. Dynamic programming,
// deterministic tie-breaking (lexicographically smallest upper-half
// boundary set).
QuantizeResult ib_quantize(const std::vector<SourceSymbol>& sorted_joint, int target_size);
QuantizeResult ib_quantize(const SymmetricSource& source, int target_size);

// Quantizer from real channel LLRs to the message alphabet.
struct ChannelQuantizer {
    double sigma = 0.0;
    MessageAlphabet alphabet;
    std::vector<double> thresholds; // |T|-1 ascending LLR cut points
    EdgeDistribution dist;
    double mutual_information = 0.0;

    int map_llr(double llr) const; // Natural label
};

// Discretizes the BPSK-AWGN LLR density on a uniform grid and runs the
// IB quantizer over it.
ChannelQuantizer design_channel_quantizer(double sigma, int alphabet_size,
                                          int grid_size = 2048);

// Joint density of a check-node (f) or variable-node (g) pair, ordered by
// LLR and carrying the exact mirror structure for the quantizer. `key`
// identifies the source pair: f symbols are ta*|T|+tb; g symbols cover the
// u_prev=0 slice only (the u_prev=1 half is implied by sign-flip symmetry
// of t_a) with the same ta*|T|+tb keying.
struct JointDensity {
    int alphabet_size = 0;
    std::vector<int> keys; // parallel to source symbols, caller ordering
    std::vector<SourceSymbol> symbols;
    SymmetricSource source;
};

JointDensity f_density(const EdgeDistribution& a, const EdgeDistribution& b);
JointDensity g_density(const EdgeDistribution& a, const EdgeDistribution& b);

// Closed-form min-sum f table: t_o = f(t_a - d, t_b - d) + d with
// d = (|T|-1)/2, computed exactly in integers.
std::vector<std::uint8_t> minsum_lut(int alphabet_size);

// Partially flipped alphabet permutation: magnitude bits inverted on the
// negative half, MSB preserved. Involution.
std::vector<std::uint8_t> relabel_map(int alphabet_size);

// Functional forms of the two min-sum circuits (sign/magnitude datapaths);
// must agree with minsum_lut exhaustively.
std::uint8_t minsum_circuit_natural(int alphabet_size, std::uint8_t ta, std::uint8_t tb);
std::uint8_t minsum_circuit_relabeled(int alphabet_size, std::uint8_t ta, std::uint8_t tb);

// Per-node decoding tables over the full (unpruned) tree, node ids in heap
// order (root = 1, children 2i / 2i+1). f tables are |T|x|T| row-major;
// g tables are 2x|T|x|T| with the known bit as the slowest index.
struct LutSet {
    LutVariant variant = LutVariant::Ib;
    MessageAlphabet alphabet;
    ChannelQuantizer channel;
    int n_bits = 0; // code length N
    std::vector<std::vector<std::uint8_t>> f_tables; // index: heap id
    std::vector<std::vector<std::uint8_t>> g_tables;
    std::vector<double> leaf_error_prob; // per u-index, from density evolution

    const std::uint8_t* f_table(int node) const { return f_tables[node].data(); }
    const std::uint8_t* g_table(int node) const { return g_tables[node].data(); }
    int map_channel_llr(double llr) const; // includes relabeling when active

    std::string to_json() const;
    static LutSet from_json(const std::string& text);
};

// Quantized density evolution down the full tree of length N, producing
// the per-edge tables of the requested variant and the per-leaf error
// probabilities.
LutSet design_luts(int n_bits, const ChannelQuantizer& channel, LutVariant variant);

// Density evolution at a design fidelity alphabet, error probabilities
// only (used by code construction).
std::vector<double> rank_bit_channels(int n_bits, double sigma, int fidelity,
                                      int grid_size = 0);

// Mutual information of the unquantized BPSK-AWGN channel (numeric
// integration; used as an oracle and for reporting).
double awgn_capacity(double sigma);

} // namespace polar
