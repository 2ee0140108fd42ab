#include "polar/decode.hpp"

namespace polar {

BitVec extract_message(const PolarCode& code, std::span<const std::uint8_t> codeword)
{
    if (static_cast<int>(codeword.size()) != code.n_bits)
        throw ParameterError("extract_message: codeword length mismatch");
    BitVec msg(code.k);
    for (int i = 0; i < code.k; ++i)
        msg[i] = codeword[code.info_indices[i]];
    return msg;
}

Decoder::Decoder(const PolarCode& code, const DecoderTree& tree, FloatKernel k, Engine e)
    : code_(&code), tree_(&tree), engine_(e), kernel_(std::move(k))
{
}

Decoder::Decoder(const PolarCode& code, const DecoderTree& tree, FixedKernel k, Engine e)
    : code_(&code), tree_(&tree), engine_(e), kernel_(std::move(k))
{
}

Decoder::Decoder(const PolarCode& code, const DecoderTree& tree, LutKernel k, Engine e)
    : code_(&code), tree_(&tree), engine_(e), kernel_(std::move(k))
{
}

template <class K>
DecodeOutput Decoder::run(const K& kernel, std::span<const double> llr)
{
    std::vector<typename K::Msg> msgs(llr.size());
    for (size_t i = 0; i < llr.size(); ++i)
        msgs[i] = kernel.from_llr(llr[i]);
    if (engine_ == Engine::Sc)
        return decode_sc(*code_, kernel, std::span<const typename K::Msg>(msgs));
    return decode_ssc(*code_, *tree_, kernel, std::span<const typename K::Msg>(msgs));
}

DecodeOutput Decoder::decode_llr(std::span<const double> llr)
{
    return std::visit([&](const auto& k) { return run(k, llr); }, kernel_);
}

} // namespace polar
