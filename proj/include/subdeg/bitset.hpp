#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace subdeg {

// Fixed-capacity bitset sized at construction. Used both for element sets
// (bits = group elements) and for index sets over subgroup lattices.
class DynBitset {
public:
    DynBitset() : nbits_(0) {}
    explicit DynBitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int capacity() const { return nbits_; }

    void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (uint64_t x : w_) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (uint64_t x : w_) if (x) return true;
        return false;
    }

    bool operator==(const DynBitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const DynBitset& o) const { return !(*this == o); }

    DynBitset& operator&=(const DynBitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    DynBitset& operator|=(const DynBitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    DynBitset operator&(const DynBitset& o) const { DynBitset r = *this; r &= o; return r; }
    DynBitset operator|(const DynBitset& o) const { DynBitset r = *this; r |= o; return r; }

    bool subset_of(const DynBitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const DynBitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    int count_and(const DynBitset& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    // compare as the integer with bit i weighted 2^i
    static int cmp_as_integer(const DynBitset& a, const DynBitset& b) {
        for (size_t i = a.w_.size(); i-- > 0;) {
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i] ? -1 : 1;
        }
        return 0;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t x = w_[wi];
            while (x) {
                int b = std::countr_zero(x);
                f(static_cast<int>(wi * 64 + b));
                x &= x - 1;
            }
        }
    }
    std::vector<int> to_indices() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

    uint64_t fnv1a() const {
        uint64_t h = 1469598103934665603ull;
        for (uint64_t x : w_) {
            for (int b = 0; b < 8; ++b) {
                h ^= (x >> (8 * b)) & 0xff;
                h *= 1099511628211ull;
            }
        }
        return h;
    }

    // lowercase hex of the bit-integer, most significant digit first, no leading zeros
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        bool started = false;
        for (size_t i = w_.size(); i-- > 0;) {
            for (int nib = 15; nib >= 0; --nib) {
                int v = (w_[i] >> (4 * nib)) & 0xf;
                if (!started && v == 0) continue;
                started = true;
                out += digits[v];
            }
        }
        return started ? out : "0";
    }
    static bool from_hex(const std::string& hex, int nbits, DynBitset& out) {
        out = DynBitset(nbits);
        if (hex.empty()) return false;
        int bitpos = 0;
        for (size_t i = hex.size(); i-- > 0;) {
            char c = hex[i];
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else return false;
            for (int b = 0; b < 4; ++b) {
                if (v & (1 << b)) {
                    int pos = bitpos + b;
                    if (pos >= nbits) return false;
                    out.set(pos);
                }
            }
            bitpos += 4;
        }
        return true;
    }

private:
    int nbits_;
    std::vector<uint64_t> w_;
};

struct BitsetHash {
    size_t operator()(const DynBitset& b) const { return static_cast<size_t>(b.fnv1a()); }
};

} // namespace subdeg
