#include "geolab/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "geolab/core.hpp"

namespace geolab {

std::string letter_name(Letter l) {
    int k = generator_of(l);
    char base = (k % 2 == 0) ? 'a' : 'b';
    if (is_inverse(l)) base = static_cast<char>(std::toupper(base));
    return std::string(1, base) + std::to_string(k / 2 + 1);
}

Word::Word(const std::vector<Letter>& letters) {
    letters_.reserve(letters.size());
    for (Letter l : letters) push_back(l);
}

Word Word::parse(std::string_view text) {
    Word w;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2) throw Error(ErrorKind::InvalidArgument, "bad letter '" + tok + "'");
        char c = tok[0];
        bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
        char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (lc != 'a' && lc != 'b') throw Error(ErrorKind::InvalidArgument, "bad letter '" + tok + "'");
        int idx = 0;
        try {
            idx = std::stoi(tok.substr(1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "bad letter '" + tok + "'");
        }
        if (idx < 1 || idx > 60) throw Error(ErrorKind::InvalidArgument, "bad letter '" + tok + "'");
        int k = 2 * (idx - 1) + (lc == 'b' ? 1 : 0);
        w.push_back(make_letter(k, inv));
    }
    return w;
}

std::string Word::str() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ' ';
        out += letter_name(letters_[i]);
    }
    return out;
}

void Word::push_back(Letter l) {
    if (!letters_.empty() && letters_.back() == inverse_letter(l))
        letters_.pop_back();
    else
        letters_.push_back(l);
}

void Word::push_front(Letter l) {
    if (!letters_.empty() && letters_.front() == inverse_letter(l))
        letters_.erase(letters_.begin());
    else
        letters_.insert(letters_.begin(), l);
}

Word Word::inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(inverse_letter(*it));
    return w;
}

Word Word::operator*(const Word& rhs) const {
    Word w = *this;
    for (Letter l : rhs.letters_) w.push_back(l);
    return w;
}

Word Word::power(int k) const {
    Word base = k < 0 ? inverse() : *this;
    Word w;
    for (int i = 0; i < std::abs(k); ++i) w = w * base;
    return w;
}

Word cyclically_reduce(const Word& w) {
    const auto& l = w.letters();
    std::size_t i = 0, j = l.size();
    while (j - i >= 2 && l[i] == inverse_letter(l[j - 1])) {
        ++i;
        --j;
    }
    return Word(std::vector<Letter>(l.begin() + static_cast<std::ptrdiff_t>(i),
                                    l.begin() + static_cast<std::ptrdiff_t>(j)));
}

ConjClass canonical_conj_form(const Word& w) {
    Word r = cyclically_reduce(w);
    if (r.empty()) throw Error(ErrorKind::TrivialClass, "word represents the identity");
    const auto& l = r.letters();
    std::size_t n = l.size();
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t k = 0; k < n; ++k) {
            Letter x = l[(s + k) % n], y = l[(best + k) % n];
            if (x != y) {
                if (x < y) best = s;
                break;
            }
        }
    }
    std::vector<Letter> rot(n);
    for (std::size_t k = 0; k < n; ++k) rot[k] = l[(best + k) % n];
    return ConjClass{Word(rot)};
}

std::pair<ConjClass, int> primitive_root(const ConjClass& c) {
    const auto& l = c.cyclic_word.letters();
    std::size_t n = l.size();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p) continue;
        bool rep = true;
        for (std::size_t i = p; i < n && rep; ++i) rep = l[i] == l[i - p];
        if (rep) {
            std::vector<Letter> block(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(p));
            return {ConjClass{Word(block)}, static_cast<int>(n / p)};
        }
    }
    return {c, 1};
}

} // namespace geolab
