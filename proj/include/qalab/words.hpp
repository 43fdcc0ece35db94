#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qalab/error.hpp"

namespace qalab {

// Input alphabet plus tokenization. Symbols are strings so families like
// {a1, b1, a2, b2} work next to plain {a, b}. Words are vectors of symbol
// indices everywhere inside the library.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    const std::vector<std::string>& symbols() const { return symbols_; }
    size_t size() const { return symbols_.size(); }
    const std::string& symbol(int i) const { return symbols_.at(static_cast<size_t>(i)); }
    int index_of(const std::string& sym) const; // -1 if absent

    // Single-char alphabets tokenize per character; otherwise greedy
    // longest-match. Errors name the 1-based offending position.
    std::vector<int> tokenize(const std::string& text) const;
    std::string render(const std::vector<int>& word) const;

private:
    std::vector<std::string> symbols_;
    bool single_char_ = true;
};

// All words of length 0..maxLen in length-lexicographic order
// (by symbol index). Stops early if fn returns false.
void for_each_word(size_t alphabetSize, int maxLen,
                   const std::function<bool(const std::vector<int>&)>& fn);

} // namespace qalab
