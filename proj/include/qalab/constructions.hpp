#pragma once

#include "qalab/qmachine.hpp"

namespace qalab {

// Builders for the concrete quantum machines, parameterized by the split
// width N (and stage count t). Every builder returns a completed spec that
// passes check_well_formed.

// Realtime machine with one blind counter recognizing a^n b^n with negative
// one-sided error 1/N: N paths push +j per a, pull -j per b, and an N-way
// QFT on the right end-marker makes the equal-count superpositions collapse
// onto the accepting target.
QMachineSpec build_upal_qbca(long N);

// Variant for (a^n b^n)*: a mid-input QFT on the first a after a b-run
// retires each balanced block and re-splits the surviving amplitude.
QMachineSpec build_upal_star_qbca(long N);

// One-way machine for a^m b a^n, m == n: paths idle j steps per a before the
// b and N-j+1 after, so they reach the end-marker simultaneously exactly on
// members; the final QFT accepts only the distinguished target.
QMachineSpec build_upal1_qfa(long N);

// Staged generalization for a^{n1} b ... b a^{nt} b a^{nt} b ... b a^{n1}:
// paths split per left block, compare the innermost pair first, and drop one
// path index per QFT on each b after the middle.
QMachineSpec build_upal_t_qfa(int t, long N);

// One N-way QFT fragment: entry (source j, target l) carries
// e^{2*pi*i*jl/N}/sqrt(N); targets[N-1] is the distinguished one.
struct QftBlockEntry {
    int source = 0;
    AmpExpr amp;
    int target = 0;
};
std::vector<QftBlockEntry> qft_block(const std::vector<int>& sources,
                                     const std::vector<int>& targets, long N);

} // namespace qalab
