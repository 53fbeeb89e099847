#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geolab {

// Letter code: 2*k for generator x_k, 2*k+1 for its inverse.  x_{2i} prints as
// a{i+1}, x_{2i+1} as b{i+1}; upper case marks the inverse.  The numeric code is
// also the fixed total order used for rotation-minimal forms.
using Letter = std::uint8_t;

constexpr Letter make_letter(int generator, bool inverse) {
    return static_cast<Letter>(2 * generator + (inverse ? 1 : 0));
}
constexpr Letter inverse_letter(Letter l) { return static_cast<Letter>(l ^ 1u); }
constexpr int generator_of(Letter l) { return l >> 1; }
constexpr bool is_inverse(Letter l) { return (l & 1u) != 0; }

std::string letter_name(Letter l);

class Word {
public:
    Word() = default;
    explicit Word(const std::vector<Letter>& letters);

    // "a1 B1 a2"; whitespace separated, empty string is the identity.
    static Word parse(std::string_view text);
    std::string str() const;

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    void push_back(Letter l);
    void push_front(Letter l);
    Word inverse() const;
    Word operator*(const Word& rhs) const;
    Word power(int k) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    std::vector<Letter> letters_;
};

struct ConjClass {
    Word cyclic_word;

    std::string str() const { return cyclic_word.str(); }
    friend bool operator==(const ConjClass&, const ConjClass&) = default;
    friend auto operator<=>(const ConjClass& a, const ConjClass& b) {
        return a.cyclic_word <=> b.cyclic_word;
    }
};

Word cyclically_reduce(const Word& w);

// Cyclic reduction then lexicographically least rotation.  Throws TrivialClass
// when the word reduces to the identity.
ConjClass canonical_conj_form(const Word& w);

// Largest d such that the cyclic word is a d-fold repetition, and the block.
std::pair<ConjClass, int> primitive_root(const ConjClass& c);

} // namespace geolab
