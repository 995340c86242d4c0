#include "ctxpredict/sequence.hpp"

#include <algorithm>
#include <cctype>

namespace ctxpredict {

Word Word::from_string(std::string_view s) {
    if (s == "\xce\xb5")  // "ε"
        return Word{};
    Word w;
    w.bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("word string must contain only '0'/'1'");
        w.bits.push_back(static_cast<Bit>(c - '0'));
    }
    return w;
}

std::string Word::str() const {
    if (bits.empty()) return "\xce\xb5";
    std::string s;
    s.reserve(bits.size());
    for (Bit b : bits) s.push_back(static_cast<char>('0' + b));
    return s;
}

RecentFirstPath recent_first(const Word& w) {
    RecentFirstPath p{w.bits};
    std::reverse(p.bits.begin(), p.bits.end());
    return p;
}

Word forward(const RecentFirstPath& p) {
    Word w{p.bits};
    std::reverse(w.bits.begin(), w.bits.end());
    return w;
}

BinarySequence::BinarySequence(std::vector<Bit> bits) : bits_(std::move(bits)) {
    for (Bit b : bits_)
        if (b > 1) throw std::invalid_argument("bit value out of {0,1}");
}

Bit BinarySequence::at(std::size_t pos) const {
    if (pos < 1 || pos > bits_.size())
        throw std::out_of_range("sequence position out of range");
    return bits_[pos - 1];
}

BinarySequence load_sequence(std::string_view source, SequenceFormat format) {
    std::vector<Bit> bits;
    if (format == SequenceFormat::Ascii) {
        bits.reserve(source.size());
        for (std::size_t i = 0; i < source.size(); ++i) {
            char c = source[i];
            if (c == '0' || c == '1')
                bits.push_back(static_cast<Bit>(c - '0'));
            else if (!std::isspace(static_cast<unsigned char>(c)))
                throw ParseError("illegal character '" + std::string(1, c) +
                                     "' at offset " + std::to_string(i),
                                 i);
        }
    } else {
        bits.reserve(source.size() * 8);
        for (unsigned char byte : source)
            for (int k = 7; k >= 0; --k)
                bits.push_back(static_cast<Bit>((byte >> k) & 1));
    }
    return BinarySequence(std::move(bits));
}

std::string serialize(const BinarySequence& x) {
    std::string s;
    s.reserve(x.size());
    for (Bit b : x.bits()) s.push_back(static_cast<char>('0' + b));
    return s;
}

std::size_t occurrence_count(const BinarySequence& x, std::size_t t, const Word& w) {
    if (t < 1 || t > x.size())
        throw std::out_of_range("occurrence_count: t out of range");
    const std::size_t k = w.size();
    if (k == 0) return t;
    if (k > t) return 0;
    std::size_t count = 0;
    for (std::size_t i = k; i <= t; ++i) {
        bool match = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (x[i - k + 1 + j] != w.bits[j]) {
                match = false;
                break;
            }
        }
        if (match) ++count;
    }
    return count;
}

Word suffix_word(const BinarySequence& x, std::size_t t, std::size_t k) {
    if (t < 1 || t > x.size())
        throw std::out_of_range("suffix_word: t out of range");
    if (k > t)
        throw std::out_of_range("suffix_word: k exceeds t");
    Word w;
    w.bits.reserve(k);
    for (std::size_t i = t - k + 1; i <= t; ++i) w.bits.push_back(x[i]);
    return w;
}

}  // namespace ctxpredict
