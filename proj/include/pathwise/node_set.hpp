#ifndef PATHWISE_NODE_SET_HPP
#define PATHWISE_NODE_SET_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pathwise {

    /// Fixed-width bit vector indexed by node id. A default constructed set has width zero and
    /// behaves as the empty set in every query, which is how dropped visited-state is represented.
    class NodeSet {
    public:
        using word_t = std::uint64_t;
        static constexpr std::size_t kWordBits = 64;

        NodeSet() = default;
        explicit NodeSet(std::size_t width) : _width(width), _words((width + kWordBits - 1) / kWordBits, 0) {}

        [[nodiscard]] static NodeSet full(std::size_t width) {
            NodeSet set(width);
            for (std::size_t i = 0; i < width; ++i)
                set.set(i);
            return set;
        }

        [[nodiscard]] std::size_t width() const noexcept { return _width; }
        [[nodiscard]] bool empty_width() const noexcept { return _width == 0; }

        [[nodiscard]] bool test(std::size_t i) const noexcept {
            if (i >= _width)
                return false;
            return (_words[i / kWordBits] >> (i % kWordBits)) & 1U;
        }

        /// Returns true when the bit flipped.
        bool set(std::size_t i) noexcept {
            word_t& word  = _words[i / kWordBits];
            const word_t bit = word_t{1} << (i % kWordBits);
            const bool was   = word & bit;
            word |= bit;
            return !was;
        }

        void reset(std::size_t i) noexcept { _words[i / kWordBits] &= ~(word_t{1} << (i % kWordBits)); }

        void clear() noexcept {
            for (auto& word : _words)
                word = 0;
        }

        [[nodiscard]] std::size_t count() const noexcept {
            std::size_t total = 0;
            for (auto word : _words)
                total += static_cast<std::size_t>(std::popcount(word));
            return total;
        }

        [[nodiscard]] bool any() const noexcept {
            for (auto word : _words)
                if (word)
                    return true;
            return false;
        }

        [[nodiscard]] bool intersects(const NodeSet& other) const noexcept {
            const std::size_t n = std::min(_words.size(), other._words.size());
            for (std::size_t w = 0; w < n; ++w)
                if (_words[w] & other._words[w])
                    return true;
            return false;
        }

        [[nodiscard]] bool is_subset_of(const NodeSet& other) const noexcept {
            for (std::size_t w = 0; w < _words.size(); ++w) {
                const word_t theirs = w < other._words.size() ? other._words[w] : 0;
                if (_words[w] & ~theirs)
                    return false;
            }
            return true;
        }

        NodeSet& operator&=(const NodeSet& other) noexcept {
            for (std::size_t w = 0; w < _words.size(); ++w)
                _words[w] &= w < other._words.size() ? other._words[w] : 0;
            return *this;
        }

        NodeSet& operator|=(const NodeSet& other) noexcept {
            const std::size_t n = std::min(_words.size(), other._words.size());
            for (std::size_t w = 0; w < n; ++w)
                _words[w] |= other._words[w];
            return *this;
        }

        [[nodiscard]] std::vector<std::size_t> members() const {
            std::vector<std::size_t> out;
            for (std::size_t w = 0; w < _words.size(); ++w) {
                word_t word = _words[w];
                while (word) {
                    out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
                    word &= word - 1;
                }
            }
            return out;
        }

        [[nodiscard]] const std::vector<word_t>& words() const noexcept { return _words; }

        friend bool operator==(const NodeSet&, const NodeSet&) = default;

    private:
        std::size_t _width = 0;
        std::vector<word_t> _words;
    };

    /// (a_primary | a_extra) is a subset of (b_primary | b_extra), without materializing the unions.
    [[nodiscard]] inline bool union_is_subset(
        const NodeSet& a_primary, const NodeSet& a_extra, const NodeSet& b_primary, const NodeSet& b_extra) noexcept {
        const auto& ap = a_primary.words();
        const auto& ae = a_extra.words();
        const auto& bp = b_primary.words();
        const auto& be = b_extra.words();
        const std::size_t n = std::max(ap.size(), ae.size());
        for (std::size_t w = 0; w < n; ++w) {
            const NodeSet::word_t a = (w < ap.size() ? ap[w] : 0) | (w < ae.size() ? ae[w] : 0);
            const NodeSet::word_t b = (w < bp.size() ? bp[w] : 0) | (w < be.size() ? be[w] : 0);
            if (a & ~b)
                return false;
        }
        return true;
    }

} // namespace pathwise

#endif // PATHWISE_NODE_SET_HPP
