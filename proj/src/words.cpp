#include "qalab/words.hpp"

#include <set>

namespace qalab {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw ConstructionError("alphabet: empty");
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw ConstructionError("alphabet: empty symbol");
        if (s == "^" || s == "$")
            throw ConstructionError("alphabet: '" + s + "' is reserved for end-markers");
        if (!seen.insert(s).second)
            throw ConstructionError("alphabet: duplicate symbol '" + s + "'");
        if (s.size() > 1) single_char_ = false;
    }
}

int Alphabet::index_of(const std::string& sym) const {
    for (size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == sym) return static_cast<int>(i);
    return -1;
}

std::vector<int> Alphabet::tokenize(const std::string& text) const {
    std::vector<int> word;
    size_t pos = 0;
    while (pos < text.size()) {
        int best = -1;
        size_t bestLen = 0;
        for (size_t i = 0; i < symbols_.size(); ++i) {
            const std::string& s = symbols_[i];
            if (s.size() > bestLen && text.compare(pos, s.size(), s) == 0) {
                best = static_cast<int>(i);
                bestLen = s.size();
            }
        }
        if (best < 0)
            throw InputError("input: symbol at position " + std::to_string(pos + 1) +
                             " of '" + text + "' is not in the alphabet");
        word.push_back(best);
        pos += bestLen;
    }
    return word;
}

std::string Alphabet::render(const std::vector<int>& word) const {
    std::string out;
    for (int t : word) out += symbol(t);
    return out;
}

void for_each_word(size_t alphabetSize, int maxLen,
                   const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> word;
    if (!fn(word)) return;
    for (int len = 1; len <= maxLen; ++len) {
        word.assign(static_cast<size_t>(len), 0);
        for (;;) {
            if (!fn(word)) return;
            int i = len - 1;
            while (i >= 0 && word[static_cast<size_t>(i)] == static_cast<int>(alphabetSize) - 1) {
                word[static_cast<size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++word[static_cast<size_t>(i)];
        }
    }
}

} // namespace qalab
