#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace kemja {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool operator[](std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        if (v)
            w_[i >> 6] |= std::uint64_t(1) << (i & 63);
        else
            w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }
    std::size_t distance(const BitVec& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] ^ o.w_[i]));
        return c;
    }
    const std::vector<std::uint64_t>& words() const { return w_; }

    friend bool operator==(const BitVec& a, const BitVec& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
    friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }
    // lexicographic on (b_0, b_1, ...) with 0 < 1
    friend bool operator<(const BitVec& a, const BitVec& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (std::size_t i = 0; i < a.w_.size(); ++i) {
            std::uint64_t d = a.w_[i] ^ b.w_[i];
            if (d) return (b.w_[i] >> std::countr_zero(d)) & 1u;
        }
        return false;
    }

    std::string str() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if ((*this)[i]) s[i] = '1';
        return s;
    }
    static BitVec from_string(const std::string& s) {
        BitVec b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) b.set(i, s[i] == '1');
        return b;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace kemja
