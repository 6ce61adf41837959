#include "isq/bitword.hpp"

namespace isq {

BitWord BitWord::repeat(bool bit, std::size_t n) {
    BitWord w;
    w.bits_.assign(n, bit ? 1 : 0);
    return w;
}

BitWord BitWord::from_value(std::uint64_t value, std::size_t width) {
    BitWord w;
    w.bits_.resize(width);
    for (std::size_t i = 0; i < width && i < 64; ++i)
        w.bits_[i] = static_cast<std::uint8_t>((value >> i) & 1u);
    return w;
}

BitWord BitWord::from_string(std::string_view ascii) {
    BitWord w;
    w.bits_.reserve(ascii.size());
    for (char c : ascii) {
        if (c != '0' && c != '1')
            throw ValidationError(std::string("bit string may contain only '0' and '1', got '") + c + "'");
        w.bits_.push_back(c == '1' ? 1 : 0);
    }
    return w;
}

bool BitWord::bit(std::size_t i) const {
    if (i >= bits_.size())
        throw ValidationError("bit position " + std::to_string(i) + " out of range for width " +
                              std::to_string(bits_.size()));
    return bits_[i] != 0;
}

void BitWord::set_bit(std::size_t i, bool value) {
    if (i >= bits_.size())
        throw ValidationError("bit position " + std::to_string(i) + " out of range for width " +
                              std::to_string(bits_.size()));
    bits_[i] = value ? 1 : 0;
}

std::uint64_t BitWord::value() const {
    if (bits_.size() > 64)
        throw ValidationError("word of width " + std::to_string(bits_.size()) +
                              " does not fit a 64-bit value");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i])
            v |= std::uint64_t{1} << i;
    return v;
}

std::string BitWord::str() const {
    std::string s;
    s.reserve(bits_.size());
    for (std::uint8_t b : bits_)
        s.push_back(b ? '1' : '0');
    return s;
}

BitWord concat(const BitWord& a, const BitWord& b) {
    BitWord out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        out.push_back(b.bit(i));
    return out;
}

} // namespace isq
