#include "gromolab/word.hpp"

#include <cstring>
#include <functional>

#include "gromolab/common.hpp"

namespace gromolab {

Word Word::letter(std::int32_t g) {
    if (g == 0) throw domain_error("generator index 0 is reserved");
    Word w;
    w.letters_.push_back(g);
    return w;
}

Word Word::from_letters(const std::vector<std::int32_t>& letters) {
    Word w;
    w.letters_.reserve(letters.size());
    for (std::int32_t g : letters) {
        if (g == 0) throw domain_error("generator index 0 is reserved");
        if (!w.letters_.empty() && w.letters_.back() == -g)
            w.letters_.pop_back();
        else
            w.letters_.push_back(g);
    }
    return w;
}

Word Word::operator*(const Word& o) const {
    Word w = *this;
    for (std::int32_t g : o.letters_) {
        if (!w.letters_.empty() && w.letters_.back() == -g)
            w.letters_.pop_back();
        else
            w.letters_.push_back(g);
    }
    return w;
}

Word Word::inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
    return w;
}

Word Word::pow(std::int64_t n) const {
    Word base = n < 0 ? inverse() : *this;
    std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    Word acc, sq = base;
    while (e) {
        if (e & 1) acc = acc * sq;
        e >>= 1;
        if (e) sq = sq * sq;
    }
    return acc;
}

std::string Word::str() const {
    if (letters_.empty()) return "e";
    std::string s;
    for (std::int32_t g : letters_) {
        std::int32_t i = g > 0 ? g : -g;
        if (i <= 26) {
            char c = static_cast<char>('a' + i - 1);
            s += g > 0 ? c : static_cast<char>(c - 'a' + 'A');
        } else {
            s += "g" + std::to_string(i) + (g > 0 ? "" : "'");
        }
    }
    return s;
}

std::string Word::key() const {
    std::string k(letters_.size() * sizeof(std::int32_t), '\0');
    if (!letters_.empty()) std::memcpy(k.data(), letters_.data(), k.size());
    return k;
}

std::size_t WordHash::operator()(const Word& w) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int32_t g : w.letters()) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(g)) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace gromolab
