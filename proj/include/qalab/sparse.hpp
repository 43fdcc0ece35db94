#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "qalab/rational.hpp"

namespace qalab {

// Magnitudes below this are dropped after every operator application.
// Part of the numeric contract for the double-precision regime.
inline constexpr double kDropThreshold = 1e-15;

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static bool negligible(const Rational& s) { return s.is_zero(); }
    static std::complex<double> to_complex(const Rational& s) { return {s.to_double(), 0.0}; }
    static std::complex<double> conj_to_complex(const Rational& s) { return to_complex(s); }
};

template <>
struct ScalarOps<std::complex<double>> {
    static bool negligible(const std::complex<double>& s) { return std::abs(s) < kDropThreshold; }
    static std::complex<double> to_complex(const std::complex<double>& s) { return s; }
    static std::complex<double> conj_to_complex(const std::complex<double>& s) { return std::conj(s); }
};

// Finitely supported vector over configuration keys. No stored zeros.
template <class K, class S>
class SparseVec {
public:
    using Entries = std::map<K, S>;

    void add(const K& key, const S& value) {
        if (ScalarOps<S>::negligible(value)) return;
        auto [it, inserted] = entries_.try_emplace(key, value);
        if (!inserted) {
            it->second += value;
            if (ScalarOps<S>::negligible(it->second)) entries_.erase(it);
        }
    }
    void set(const K& key, const S& value) {
        if (ScalarOps<S>::negligible(value)) entries_.erase(key);
        else entries_[key] = value;
    }
    S get(const K& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? S{} : it->second;
    }
    bool empty() const { return entries_.empty(); }
    size_t size() const { return entries_.size(); }
    const Entries& entries() const { return entries_; }

    double norm_sq() const {
        double n = 0;
        for (const auto& [k, s] : entries_) n += std::norm(ScalarOps<S>::to_complex(s));
        return n;
    }

    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }

private:
    Entries entries_;
};

// Finitely supported linear map, stored column-major: cols[source][target].
template <class K, class S>
class SparseMap {
public:
    using Column = std::map<K, S>;

    void add(const K& target, const K& source, const S& value) {
        if (ScalarOps<S>::negligible(value)) return;
        auto& col = cols_[source];
        auto [it, inserted] = col.try_emplace(target, value);
        if (!inserted) {
            it->second += value;
            if (ScalarOps<S>::negligible(it->second)) {
                col.erase(it);
                if (col.empty()) cols_.erase(source);
            }
        }
    }
    S get(const K& target, const K& source) const {
        auto c = cols_.find(source);
        if (c == cols_.end()) return S{};
        auto it = c->second.find(target);
        return it == c->second.end() ? S{} : it->second;
    }
    const std::map<K, Column>& columns() const { return cols_; }
    bool empty() const { return cols_.empty(); }

private:
    std::map<K, Column> cols_;
};

// result[j] = sum_i map[j,i] * v[i]; zero entries dropped.
template <class K, class S>
SparseVec<K, S> mul(const SparseMap<K, S>& m, const SparseVec<K, S>& v) {
    SparseVec<K, S> out;
    const auto& cols = m.columns();
    for (const auto& [source, coeff] : v.entries()) {
        auto c = cols.find(source);
        if (c == cols.end()) continue;
        for (const auto& [target, value] : c->second) out.add(target, value * coeff);
    }
    return out;
}

template <class K1, class K2, class S>
SparseVec<std::pair<K1, K2>, S> tensor(const SparseVec<K1, S>& a, const SparseVec<K2, S>& b) {
    SparseVec<std::pair<K1, K2>, S> out;
    for (const auto& [ka, sa] : a.entries())
        for (const auto& [kb, sb] : b.entries())
            out.add({ka, kb}, sa * sb);
    return out;
}

template <class K1, class K2, class S>
SparseMap<std::pair<K1, K2>, S> tensor(const SparseMap<K1, S>& a, const SparseMap<K2, S>& b) {
    SparseMap<std::pair<K1, K2>, S> out;
    for (const auto& [sa, colA] : a.columns())
        for (const auto& [sb, colB] : b.columns())
            for (const auto& [ta, va] : colA)
                for (const auto& [tb, vb] : colB)
                    out.add({ta, tb}, {sa, sb}, va * vb);
    return out;
}

template <class K>
struct GramDefect {
    K a;
    K b;               // a == b for a norm defect
    double deviation;  // |<col_a, col_b> - delta_ab|
};

// Checks that the stacked columns of a family of maps form an orthonormal
// set over `sources`: equivalently sum_w E_w^dagger E_w = I on that space.
// Violations are report content, not failures.
template <class K, class S>
std::vector<GramDefect<K>> check_columns_orthonormal(const std::vector<SparseMap<K, S>>& family,
                                                     const std::set<K>& sources, double tol) {
    std::map<std::pair<K, K>, std::complex<double>> gram;
    for (const K& s : sources) gram[{s, s}] = 0.0;
    for (const auto& m : family) {
        // Norms straight off the columns.
        for (const auto& [source, col] : m.columns()) {
            if (!sources.count(source)) continue;
            auto& g = gram[{source, source}];
            for (const auto& [target, value] : col) g += std::norm(ScalarOps<S>::to_complex(value));
        }
        // Cross terms only arise between columns sharing a target row.
        std::map<K, std::vector<std::pair<K, std::complex<double>>>> rows;
        for (const auto& [source, col] : m.columns()) {
            if (!sources.count(source)) continue;
            for (const auto& [target, value] : col)
                rows[target].emplace_back(source, ScalarOps<S>::to_complex(value));
        }
        for (const auto& [target, hits] : rows)
            for (size_t i = 0; i < hits.size(); ++i)
                for (size_t j = i + 1; j < hits.size(); ++j)
                    gram[{hits[i].first, hits[j].first}] += std::conj(hits[i].second) * hits[j].second;
    }
    std::vector<GramDefect<K>> defects;
    for (const auto& [pair, g] : gram) {
        double expect = pair.first == pair.second ? 1.0 : 0.0;
        double dev = std::abs(g - expect);
        if (dev > tol) defects.push_back({pair.first, pair.second, dev});
    }
    return defects;
}

} // namespace qalab
