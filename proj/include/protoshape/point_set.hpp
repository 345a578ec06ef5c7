#pragma once

#include <cstdint>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace protoshape {

/// Subset of the points of a finite space, stored as membership flags over
/// the space's ordered point list. Widths up to 64 live entirely on the
/// stack; wider sets spill the remaining words to the heap.
class PointSet {
public:
    PointSet() : width_(0), w0_(0) {}

    explicit PointSet(std::uint32_t width) : width_(width), w0_(0) {
        if (extra_words() > 0)
            rest_ = std::make_unique<std::uint64_t[]>(extra_words());
    }

    PointSet(const PointSet& other) : width_(other.width_), w0_(other.w0_) {
        if (extra_words() > 0) {
            rest_ = std::make_unique<std::uint64_t[]>(extra_words());
            for (std::size_t k = 0; k < extra_words(); ++k) rest_[k] = other.rest_[k];
        }
    }

    PointSet(PointSet&&) noexcept = default;

    PointSet& operator=(const PointSet& other) {
        if (this != &other) { PointSet tmp(other); *this = std::move(tmp); }
        return *this;
    }

    PointSet& operator=(PointSet&&) noexcept = default;

    static PointSet full(std::uint32_t width) {
        PointSet s(width);
        for (std::uint32_t i = 0; i < width; ++i) s.set(i);
        return s;
    }

    std::uint32_t width() const { return width_; }

    bool test(std::uint32_t i) const {
        return (word(i / 64) >> (i % 64)) & 1u;
    }

    void set(std::uint32_t i) { word_ref(i / 64) |= std::uint64_t{1} << (i % 64); }
    void reset(std::uint32_t i) { word_ref(i / 64) &= ~(std::uint64_t{1} << (i % 64)); }

    std::size_t count() const {
        std::size_t c = popcount64(w0_);
        for (std::size_t k = 0; k < extra_words(); ++k) c += popcount64(rest_[k]);
        return c;
    }

    bool any() const {
        if (w0_ != 0) return true;
        for (std::size_t k = 0; k < extra_words(); ++k)
            if (rest_[k] != 0) return true;
        return false;
    }

    bool none() const { return !any(); }

    PointSet& operator&=(const PointSet& o) {
        w0_ &= o.w0_;
        for (std::size_t k = 0; k < extra_words(); ++k) rest_[k] &= o.rest_[k];
        return *this;
    }

    PointSet& operator|=(const PointSet& o) {
        w0_ |= o.w0_;
        for (std::size_t k = 0; k < extra_words(); ++k) rest_[k] |= o.rest_[k];
        return *this;
    }

    friend PointSet operator&(PointSet a, const PointSet& b) { a &= b; return a; }
    friend PointSet operator|(PointSet a, const PointSet& b) { a |= b; return a; }

    bool subset_of(const PointSet& o) const {
        if ((w0_ & ~o.w0_) != 0) return false;
        for (std::size_t k = 0; k < extra_words(); ++k)
            if ((rest_[k] & ~o.rest_[k]) != 0) return false;
        return true;
    }

    bool intersects(const PointSet& o) const {
        if ((w0_ & o.w0_) != 0) return true;
        for (std::size_t k = 0; k < extra_words(); ++k)
            if ((rest_[k] & o.rest_[k]) != 0) return true;
        return false;
    }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        if (a.width_ != b.width_ || a.w0_ != b.w0_) return false;
        for (std::size_t k = 0; k < a.extra_words(); ++k)
            if (a.rest_[k] != b.rest_[k]) return false;
        return true;
    }

    friend bool operator!=(const PointSet& a, const PointSet& b) { return !(a == b); }

    /// Total order used wherever subsets must be enumerated deterministically:
    /// compare indicator words numerically, most significant word first.
    friend bool operator<(const PointSet& a, const PointSet& b) {
        for (std::size_t k = a.extra_words(); k-- > 0;) {
            if (a.rest_[k] != b.rest_[k]) return a.rest_[k] < b.rest_[k];
        }
        return a.w0_ < b.w0_;
    }

    std::vector<std::uint32_t> indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for (std::uint32_t i = 0; i < width_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    std::uint32_t first() const {
        for (std::uint32_t i = 0; i < width_; ++i)
            if (test(i)) return i;
        return width_;
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t w) {
            h ^= w;
            h *= 1099511628211ull;
        };
        mix(w0_);
        for (std::size_t k = 0; k < extra_words(); ++k) mix(rest_[k]);
        return static_cast<std::size_t>(h);
    }

private:
    static std::size_t popcount64(std::uint64_t w) {
        std::size_t c = 0;
        while (w) { w &= w - 1; ++c; }
        return c;
    }

    std::size_t extra_words() const {
        return width_ <= 64 ? 0 : (width_ + 63) / 64 - 1;
    }

    std::uint64_t word(std::size_t k) const { return k == 0 ? w0_ : rest_[k - 1]; }
    std::uint64_t& word_ref(std::size_t k) { return k == 0 ? w0_ : rest_[k - 1]; }

    std::uint32_t width_;
    std::uint64_t w0_;
    std::unique_ptr<std::uint64_t[]> rest_;
};

struct PointSetHash {
    std::size_t operator()(const PointSet& s) const { return s.hash(); }
};

} // namespace protoshape
