#include "qalab/languages.hpp"

#include <algorithm>
#include <map>

namespace qalab {

namespace {

const std::map<std::string, LanguageTag>& tag_names() {
    static const std::map<std::string, LanguageTag> names = {
        {"upal", LanguageTag::Upal},
        {"upal_star", LanguageTag::UpalStar},
        {"ijk", LanguageTag::Ijk},
        {"say", LanguageTag::Say},
        {"eq", LanguageTag::Eq},
        {"neq", LanguageTag::Neq},
        {"upal_t", LanguageTag::UpalT},
        {"upal_t_strict", LanguageTag::UpalTStrict},
        {"twin", LanguageTag::Twin},
        {"gt", LanguageTag::Gt},
        {"gt_t", LanguageTag::GtT},
    };
    return names;
}

std::string tag_str(LanguageTag tag) {
    for (const auto& [name, t] : tag_names())
        if (t == tag) return name;
    return "?";
}

// Split a token word on a separator symbol. n separators yield n+1 blocks.
std::vector<std::vector<int>> split_on(const std::vector<int>& word, int sep) {
    std::vector<std::vector<int>> blocks(1);
    for (int t : word) {
        if (t == sep) blocks.emplace_back();
        else blocks.back().push_back(t);
    }
    return blocks;
}

std::vector<long> symbol_counts(const std::vector<int>& word, size_t alphabetSize) {
    std::vector<long> counts(alphabetSize, 0);
    for (int t : word) ++counts[static_cast<size_t>(t)];
    return counts;
}

} // namespace

bool LanguageId::needs_param() const {
    switch (tag) {
        case LanguageTag::Eq:
        case LanguageTag::Neq:
        case LanguageTag::UpalT:
        case LanguageTag::UpalTStrict:
        case LanguageTag::Twin:
        case LanguageTag::GtT:
            return true;
        default:
            return false;
    }
}

LanguageId LanguageId::parse(const std::string& text) {
    std::string name = text;
    int t = 0;
    auto open = text.find('(');
    if (open != std::string::npos) {
        if (text.back() != ')') throw ParseError("language: missing ')' in '" + text + "'");
        name = text.substr(0, open);
        std::string param = text.substr(open + 1, text.size() - open - 2);
        try {
            t = std::stoi(param);
        } catch (...) {
            throw ParseError("language: bad parameter in '" + text + "'");
        }
    }
    auto it = tag_names().find(name);
    if (it == tag_names().end()) throw ParseError("language: unknown id '" + text + "'");
    LanguageId id{it->second, t};
    if (id.needs_param() && t < 1)
        throw ParseError("language: '" + name + "' requires a positive parameter");
    if (!id.needs_param() && open != std::string::npos)
        throw ParseError("language: '" + name + "' takes no parameter");
    return id;
}

std::string LanguageId::str() const {
    std::string s = tag_str(tag);
    if (needs_param()) s += "(" + std::to_string(t) + ")";
    return s;
}

Alphabet language_alphabet(const LanguageId& id) {
    switch (id.tag) {
        case LanguageTag::Upal:
        case LanguageTag::UpalStar:
        case LanguageTag::Say:
        case LanguageTag::UpalT:
        case LanguageTag::UpalTStrict:
        case LanguageTag::Gt:
            return Alphabet({"a", "b"});
        case LanguageTag::Ijk:
        case LanguageTag::Twin:
            return Alphabet({"a", "b", "c"});
        case LanguageTag::Eq:
        case LanguageTag::Neq:
        case LanguageTag::GtT: {
            std::vector<std::string> syms;
            for (int i = 1; i <= id.t; ++i) syms.push_back("a" + std::to_string(i));
            for (int i = 1; i <= id.t; ++i) syms.push_back("b" + std::to_string(i));
            return Alphabet(syms);
        }
    }
    throw Error("language: unreachable");
}

bool oracle_tokens(const LanguageId& id, const std::vector<int>& word, const Alphabet& alphabet) {
    const long n = static_cast<long>(word.size());
    switch (id.tag) {
        case LanguageTag::Upal: {
            long i = 0;
            while (i < n && word[static_cast<size_t>(i)] == 0) ++i;
            long as = i;
            while (i < n && word[static_cast<size_t>(i)] == 1) ++i;
            return i == n && n == 2 * as;
        }
        case LanguageTag::UpalStar: {
            // Maximal-run decomposition is unique: every a-run must be
            // followed by a b-run of exactly the same length.
            long i = 0;
            while (i < n) {
                if (word[static_cast<size_t>(i)] != 0) return false;
                long as = 0;
                while (i < n && word[static_cast<size_t>(i)] == 0) { ++as; ++i; }
                long bs = 0;
                while (i < n && word[static_cast<size_t>(i)] == 1) { ++bs; ++i; }
                if (as != bs) return false;
            }
            return true;
        }
        case LanguageTag::Ijk: {
            long i = 0, blockA = 0, blockB = 0, blockC = 0;
            while (i < n && word[static_cast<size_t>(i)] == 0) { ++blockA; ++i; }
            while (i < n && word[static_cast<size_t>(i)] == 1) { ++blockB; ++i; }
            while (i < n && word[static_cast<size_t>(i)] == 2) { ++blockC; ++i; }
            if (i != n || blockA < 1 || blockB < 1 || blockC < 1) return false;
            return blockA != blockB && blockA != blockC && blockB != blockC;
        }
        case LanguageTag::Say: {
            // Quantifier-literal: b-positions p, q with |u1| = p-1 equal to
            // |v2| = n-q, i.e. p + q = n + 1 (p and q may coincide).
            std::vector<long> bpos;
            for (long i = 0; i < n; ++i)
                if (word[static_cast<size_t>(i)] == 1) bpos.push_back(i + 1);
            for (long p : bpos)
                for (long q : bpos)
                    if (p + q == n + 1) return true;
            return false;
        }
        case LanguageTag::Eq: {
            auto counts = symbol_counts(word, alphabet.size());
            for (int i = 0; i < id.t; ++i)
                if (counts[static_cast<size_t>(i)] != counts[static_cast<size_t>(id.t + i)]) return false;
            return true;
        }
        case LanguageTag::Neq: {
            auto counts = symbol_counts(word, alphabet.size());
            for (int i = 0; i < id.t; ++i)
                if (counts[static_cast<size_t>(i)] == counts[static_cast<size_t>(id.t + i)]) return false;
            return true;
        }
        case LanguageTag::UpalT:
        case LanguageTag::UpalTStrict: {
            auto runs = split_on(word, 1); // blocks of a's between b's
            if (static_cast<int>(runs.size()) != 2 * id.t) return false;
            for (size_t i = 0; i < runs.size() / 2; ++i)
                if (runs[i].size() != runs[runs.size() - 1 - i].size()) return false;
            if (id.tag == LanguageTag::UpalTStrict)
                for (const auto& r : runs)
                    if (r.empty()) return false;
            return true;
        }
        case LanguageTag::Twin: {
            auto blocks = split_on(word, 2);
            if (static_cast<int>(blocks.size()) != 2 * id.t) return false;
            for (size_t i = 0; i < blocks.size() / 2; ++i)
                if (blocks[i] != blocks[blocks.size() - 1 - i]) return false;
            return true;
        }
        case LanguageTag::Gt: {
            auto counts = symbol_counts(word, alphabet.size());
            return counts[0] > counts[1] && counts[1] > 0;
        }
        case LanguageTag::GtT: {
            auto counts = symbol_counts(word, alphabet.size());
            for (int i = 0; i < id.t; ++i)
                if (counts[static_cast<size_t>(i)] <= counts[static_cast<size_t>(id.t + i)]) return false;
            return true;
        }
    }
    throw Error("language: unreachable");
}

bool oracle(const LanguageId& id, const std::string& w) {
    Alphabet alphabet = language_alphabet(id);
    return oracle_tokens(id, alphabet.tokenize(w), alphabet);
}

} // namespace qalab
