#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kts {

// Finite sequence of bits. The universal currency of the library: programs,
// machine inputs, outputs and witnesses are all BitStrings.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {}

    static BitString zeros(size_t n) { return BitString(std::vector<uint8_t>(n, 0)); }

    // Parses a string of '0'/'1' characters. Rejects anything else.
    static std::optional<BitString> parse(const std::string& text) {
        BitString out;
        out.bits_.reserve(text.size());
        for (char c : text) {
            if (c == '0') out.bits_.push_back(0);
            else if (c == '1') out.bits_.push_back(1);
            else return std::nullopt;
        }
        return out;
    }

    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    uint8_t operator[](size_t i) const { return bits_[i]; }

    void push_back(uint8_t bit) { bits_.push_back(bit ? 1 : 0); }
    void append(const BitString& other) {
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    }
    void clear() { bits_.clear(); }
    void reserve(size_t n) { bits_.reserve(n); }

    bool operator==(const BitString& other) const { return bits_ == other.bits_; }
    bool operator!=(const BitString& other) const { return bits_ != other.bits_; }

    // Lexicographic order among equal-length strings; shorter-first otherwise.
    bool length_lex_less(const BitString& other) const {
        if (bits_.size() != other.bits_.size()) return bits_.size() < other.bits_.size();
        return bits_ < other.bits_;
    }

    bool starts_with(const BitString& prefix) const {
        if (prefix.size() > size()) return false;
        for (size_t i = 0; i < prefix.size(); ++i)
            if (bits_[i] != prefix.bits_[i]) return false;
        return true;
    }

    // True when this is a proper prefix of other (strictly shorter).
    bool proper_prefix_of(const BitString& other) const {
        return size() < other.size() && other.starts_with(*this);
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits_.size());
        for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
        return s;
    }

    const std::vector<uint8_t>& data() const { return bits_; }

private:
    std::vector<uint8_t> bits_;
};

}  // namespace kts
