#include "isq/registers.hpp"

namespace isq {

namespace {

// Guards runaway growth from absurd register numbers (indexed references can
// name registers far beyond anything a sane sequence touches).
constexpr std::uint64_t max_register_number = std::uint64_t{1} << 30;

} // namespace

bool RegisterFile::get(RegisterKind kind, std::uint64_t number) const {
    const auto& bank = banks_[static_cast<std::size_t>(kind)];
    if (number == 0 || number > bank.size())
        return false;
    return bank[number - 1] != 0;
}

void RegisterFile::set(RegisterKind kind, std::uint64_t number, bool value) {
    if (number == 0)
        throw ValidationError("register numbers are positive");
    if (number > max_register_number)
        throw Error("register number " + std::to_string(number) + " exceeds the register-file limit");
    auto& bank = banks_[static_cast<std::size_t>(kind)];
    if (number > bank.size())
        bank.resize(number, 0);
    bank[number - 1] = value ? 1 : 0;
}

BitWord RegisterFile::read_word(RegisterKind kind, std::uint64_t base, std::size_t width) const {
    BitWord w;
    for (std::size_t i = 0; i < width; ++i)
        w.push_back(get(kind, base + i));
    return w;
}

void RegisterFile::write_word(RegisterKind kind, std::uint64_t base, const BitWord& word) {
    for (std::size_t i = 0; i < word.size(); ++i)
        set(kind, base + i, word.bit(i));
}

const std::vector<std::uint8_t>& RegisterFile::bank(RegisterKind kind) const {
    return banks_[static_cast<std::size_t>(kind)];
}

bool RegisterFile::same_contents(const RegisterFile& other) const {
    for (std::size_t k = 0; k < banks_.size(); ++k) {
        const auto& a = banks_[k];
        const auto& b = other.banks_[k];
        std::size_t common = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < common; ++i)
            if (a[i] != b[i])
                return false;
        for (std::size_t i = common; i < a.size(); ++i)
            if (a[i] != 0)
                return false;
        for (std::size_t i = common; i < b.size(); ++i)
            if (b[i] != 0)
                return false;
    }
    return true;
}

} // namespace isq
