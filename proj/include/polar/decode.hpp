/*
SC and SSC decoding engines, generic over the message kernel.
*/

#pragma once

#include <span>
#include <variant>
#include <vector>

#include "polar/code.hpp"
#include "polar/kernels.hpp"

namespace polar {

struct DecodeOutput {
    BitVec codeword; // beta at the root, length N
    BitVec u;        // u-domain estimate, zeros at frozen indices
    BitVec message;  // codeword restricted to the information indices
};

BitVec extract_message(const PolarCode& code, std::span<const std::uint8_t> codeword);

namespace detail {

// Per-depth scratch; beta_l and beta_r share the output span and are
// combined in place.
template <class K>
class ScWorkspace {
public:
    void reset(int n_bits)
    {
        int depths = ilog2(n_bits) + 1;
        alpha_.resize(depths);
        for (int d = 0; d < depths; ++d)
            alpha_[d].assign(n_bits >> d, typename K::Msg{});
        beta_.assign(n_bits, 0);
    }
    std::vector<std::vector<typename K::Msg>> alpha_;
    BitVec beta_;
};

} // namespace detail

// Full successive-cancellation recursion over the unpruned tree.
template <class K>
class ScDecoder {
public:
    ScDecoder(const PolarCode& code, K kernel) : code_(&code), kernel_(std::move(kernel)) {}

    DecodeOutput decode(std::span<const typename K::Msg> channel)
    {
        if (static_cast<int>(channel.size()) != code_->n_bits)
            throw ParameterError("decode_sc: channel length mismatch");
        ws_.reset(code_->n_bits);
        std::copy(channel.begin(), channel.end(), ws_.alpha_[0].begin());
        recurse(1, 0, code_->n_bits, ws_.beta_.data());
        return finish(*code_, ws_.beta_);
    }

    static DecodeOutput finish(const PolarCode& code, const BitVec& beta_root)
    {
        DecodeOutput out;
        out.codeword = beta_root;
        out.u = beta_root;
        polar_transform(out.u);
        out.message = extract_message(code, out.codeword);
        return out;
    }

private:
    void recurse(int heap, int depth, int len, std::uint8_t* beta)
    {
        auto& alpha = ws_.alpha_[depth];
        if (len == 1) {
            int leaf = heap - code_->n_bits;
            beta[0] = code_->is_frozen[leaf] ? 0 : kernel_.hard(alpha[0]);
            return;
        }
        int half = len / 2;
        auto& child = ws_.alpha_[depth + 1];
        for (int i = 0; i < half; ++i)
            child[i] = kernel_.f(heap, alpha[i], alpha[i + half]);
        recurse(2 * heap, depth + 1, half, beta);
        for (int i = 0; i < half; ++i)
            child[i] = kernel_.g(heap, alpha[i], alpha[i + half], beta[i]);
        recurse(2 * heap + 1, depth + 1, half, beta + half);
        for (int i = 0; i < half; ++i)
            beta[i] ^= beta[i + half];
    }

    const PolarCode* code_;
    K kernel_;
    detail::ScWorkspace<K> ws_;
};

// Simplified SC over the pruned tree: rate-0 nodes return zeros, rate-1
// nodes return element-wise hard decisions.
template <class K>
class SscDecoder {
public:
    SscDecoder(const PolarCode& code, const DecoderTree& tree, K kernel)
        : code_(&code), tree_(&tree), kernel_(std::move(kernel))
    {
    }

    DecodeOutput decode(std::span<const typename K::Msg> channel)
    {
        if (static_cast<int>(channel.size()) != code_->n_bits)
            throw ParameterError("decode_ssc: channel length mismatch");
        ws_.reset(code_->n_bits);
        std::copy(channel.begin(), channel.end(), ws_.alpha_[0].begin());
        recurse(0, 0, ws_.beta_.data());
        return ScDecoder<K>::finish(*code_, ws_.beta_);
    }

private:
    void recurse(int node_idx, int depth, std::uint8_t* beta)
    {
        const auto& node = tree_->nodes[node_idx];
        auto& alpha = ws_.alpha_[depth];
        if (node.kind == NodeKind::Rate0) {
            std::fill(beta, beta + node.length, 0);
            return;
        }
        if (node.kind == NodeKind::Rate1) {
            for (int i = 0; i < node.length; ++i)
                beta[i] = kernel_.hard(alpha[i]);
            return;
        }
        int half = node.length / 2;
        auto& child = ws_.alpha_[depth + 1];
        for (int i = 0; i < half; ++i)
            child[i] = kernel_.f(node.heap, alpha[i], alpha[i + half]);
        recurse(node.left, depth + 1, beta);
        for (int i = 0; i < half; ++i)
            child[i] = kernel_.g(node.heap, alpha[i], alpha[i + half], beta[i]);
        recurse(node.right, depth + 1, beta + half);
        for (int i = 0; i < half; ++i)
            beta[i] ^= beta[i + half];
    }

    const PolarCode* code_;
    const DecoderTree* tree_;
    K kernel_;
    detail::ScWorkspace<K> ws_;
};

template <class K>
DecodeOutput decode_sc(const PolarCode& code, const K& kernel,
                       std::span<const typename K::Msg> channel)
{
    ScDecoder<K> dec(code, kernel);
    return dec.decode(channel);
}

template <class K>
DecodeOutput decode_ssc(const PolarCode& code, const DecoderTree& tree, const K& kernel,
                        std::span<const typename K::Msg> channel)
{
    SscDecoder<K> dec(code, tree, kernel);
    return dec.decode(channel);
}

// Runtime-selected decoder over a kernel variant; maps real channel LLRs
// into the kernel domain and decodes with SSC (or SC on request).
class Decoder {
public:
    enum class Engine { Ssc, Sc };

    Decoder(const PolarCode& code, const DecoderTree& tree, FloatKernel k,
            Engine e = Engine::Ssc);
    Decoder(const PolarCode& code, const DecoderTree& tree, FixedKernel k,
            Engine e = Engine::Ssc);
    Decoder(const PolarCode& code, const DecoderTree& tree, LutKernel k,
            Engine e = Engine::Ssc);

    DecodeOutput decode_llr(std::span<const double> llr);

private:
    template <class K>
    DecodeOutput run(const K& kernel, std::span<const double> llr);

    const PolarCode* code_;
    const DecoderTree* tree_;
    Engine engine_;
    std::variant<FloatKernel, FixedKernel, LutKernel> kernel_;
};

} // namespace polar
