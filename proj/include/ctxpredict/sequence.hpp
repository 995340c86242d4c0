#ifndef CTXPREDICT_SEQUENCE_HPP
#define CTXPREDICT_SEQUENCE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctxpredict {

using Bit = std::uint8_t;  // 0 or 1

/// Raised by load_sequence when text input contains a character other than
/// '0', '1' or whitespace.  offset() is the byte position of the offender.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A bit string in forward time order (oldest symbol first).  The empty
/// word is valid and denotes the null context.
struct Word {
    std::vector<Bit> bits;

    Word() = default;
    explicit Word(std::vector<Bit> b) : bits(std::move(b)) {}

    /// "0110" -> Word; "" and the conventional "ε" both give the empty word.
    static Word from_string(std::string_view s);

    std::size_t size() const noexcept { return bits.size(); }
    bool empty() const noexcept { return bits.empty(); }
    std::string str() const;  // "ε" for the empty word

    auto operator<=>(const Word&) const = default;
};

/// The same bit string read most-recent-symbol-first: the order in which a
/// suffix tree is walked.  Converting back and forth is an involution.
struct RecentFirstPath {
    std::vector<Bit> bits;
    auto operator<=>(const RecentFirstPath&) const = default;
};

RecentFirstPath recent_first(const Word& w);
Word forward(const RecentFirstPath& p);

/// Immutable binary sequence x_1..x_N.  All positions are 1-based.
class BinarySequence {
public:
    BinarySequence() = default;
    explicit BinarySequence(std::vector<Bit> bits);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    Bit at(std::size_t pos) const;  // checked
    Bit operator[](std::size_t pos) const { return bits_[pos - 1]; }

    const std::vector<Bit>& bits() const noexcept { return bits_; }

private:
    std::vector<Bit> bits_;
};

enum class SequenceFormat { Ascii, Raw };

/// Ascii: '0'/'1' characters, whitespace ignored.  Raw: bytes unpacked most
/// significant bit first.
BinarySequence load_sequence(std::string_view source, SequenceFormat format);

/// Ascii form; load_sequence(serialize(x), Ascii) round-trips.
std::string serialize(const BinarySequence& x);

/// Number of positions i with |w| <= i <= t where (x_{i-|w|+1},...,x_i) = w.
/// Occurrences may overlap and one ending exactly at t counts.  The empty
/// word returns t.  Throws std::out_of_range unless 1 <= t <= N.
std::size_t occurrence_count(const BinarySequence& x, std::size_t t, const Word& w);

/// (x_{t-k+1},...,x_t) in forward order; k = 0 gives the empty word.
/// Throws std::out_of_range unless 1 <= t <= N and k <= t.
Word suffix_word(const BinarySequence& x, std::size_t t, std::size_t k);

}  // namespace ctxpredict

#endif
