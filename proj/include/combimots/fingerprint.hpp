#ifndef COMBIMOTS_FINGERPRINT_HPP
#define COMBIMOTS_FINGERPRINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "combimots/types.hpp"

namespace combimots {

/// Fixed-width bitvector stand-in for a molecular fingerprint.
class Fingerprint {
public:
    Fingerprint() = default;
    explicit Fingerprint(std::size_t width);

    /// Parse big-endian hex; width = 4 bits per hex digit.
    static Fingerprint from_hex(const std::string& hex);

    /// Convenience for tests: "1100" -> bits 0 and 1 set.
    static Fingerprint from_bits(const std::string& bits);

    std::string to_hex() const;

    std::size_t width() const { return width_; }
    bool test(std::size_t i) const;
    void set(std::size_t i, bool value = true);
    std::size_t popcount() const;

    Fingerprint operator|(const Fingerprint& other) const;
    Fingerprint operator&(const Fingerprint& other) const;
    bool operator==(const Fingerprint& other) const;

private:
    void require_same_width(const Fingerprint& other) const;

    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;

    friend double tanimoto(const Fingerprint&, const Fingerprint&);
};

/// |a & b| / |a | b|; 1.0 when both fingerprints are all-zero.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace combimots

#endif
