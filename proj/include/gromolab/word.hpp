#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gromolab {

/// Freely reduced word over signed one-based generator indices: letter +i is
/// the i-th generator, -i its inverse. Reduction (no adjacent g g^-1) is an
/// invariant of the type; the empty word is the identity.
class Word {
public:
    Word() = default;

    static Word letter(std::int32_t g);
    static Word from_letters(const std::vector<std::int32_t>& letters);

    const std::vector<std::int32_t>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word operator*(const Word& o) const;  // concatenation + free reduction
    Word inverse() const;
    Word pow(std::int64_t n) const;

    bool operator==(const Word& o) const = default;

    // "a", "A" for a^-1, "b", ... while the alphabet fits; "g3'" style beyond
    std::string str() const;

    // stable byte key for hashing
    std::string key() const;

private:
    std::vector<std::int32_t> letters_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const;
};

}  // namespace gromolab
