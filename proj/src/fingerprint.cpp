#include "combimots/fingerprint.hpp"

#include <bit>
#include <cctype>

namespace combimots {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

Fingerprint::Fingerprint(std::size_t width)
    : width_(width), words_((width + 63) / 64, 0) {}

Fingerprint Fingerprint::from_hex(const std::string& hex) {
    Fingerprint fp(hex.size() * 4);
    // Digit 0 is the most significant nibble, covering bits [width-4, width).
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const int v = hex_value(hex[i]);
        if (v < 0) {
            throw ValueError(std::string("invalid hex digit '") + hex[i] +
                             "' in fingerprint");
        }
        const std::size_t base = (hex.size() - 1 - i) * 4;
        for (int bit = 0; bit < 4; ++bit) {
            if (v & (1 << bit)) fp.set(base + static_cast<std::size_t>(bit));
        }
    }
    return fp;
}

Fingerprint Fingerprint::from_bits(const std::string& bits) {
    Fingerprint fp(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            fp.set(i);
        } else if (bits[i] != '0') {
            throw ValueError("invalid bit character in fingerprint literal");
        }
    }
    return fp;
}

std::string Fingerprint::to_hex() const {
    const std::size_t digits = (width_ + 3) / 4;
    std::string out(digits, '0');
    for (std::size_t i = 0; i < digits; ++i) {
        const std::size_t base = (digits - 1 - i) * 4;
        int v = 0;
        for (int bit = 0; bit < 4; ++bit) {
            const std::size_t pos = base + static_cast<std::size_t>(bit);
            if (pos < width_ && test(pos)) v |= (1 << bit);
        }
        out[i] = kHexDigits[v];
    }
    return out;
}

bool Fingerprint::test(std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u;
}

void Fingerprint::set(std::size_t i, bool value) {
    if (i >= width_) {
        throw ValueError("fingerprint bit index out of range");
    }
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
        words_[i / 64] |= mask;
    } else {
        words_[i / 64] &= ~mask;
    }
}

std::size_t Fingerprint::popcount() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

void Fingerprint::require_same_width(const Fingerprint& other) const {
    if (width_ != other.width_) {
        throw DimensionError("fingerprint widths differ: " +
                             std::to_string(width_) + " vs " +
                             std::to_string(other.width_));
    }
}

Fingerprint Fingerprint::operator|(const Fingerprint& other) const {
    require_same_width(other);
    Fingerprint out(width_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        out.words_[i] = words_[i] | other.words_[i];
    }
    return out;
}

Fingerprint Fingerprint::operator&(const Fingerprint& other) const {
    require_same_width(other);
    Fingerprint out(width_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        out.words_[i] = words_[i] & other.words_[i];
    }
    return out;
}

bool Fingerprint::operator==(const Fingerprint& other) const {
    return width_ == other.width_ && words_ == other.words_;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
    a.require_same_width(b);
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
        inter += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
        uni += static_cast<std::size_t>(std::popcount(a.words_[i] | b.words_[i]));
    }
    if (uni == 0) return 1.0;  // two empty fingerprints: 0/0 convention
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace combimots
