#include "qalab/constructions.hpp"

namespace qalab {

namespace {

std::vector<int> upd(int c) { return {c}; }

QTrans trans(AmpExpr amp, int target, std::vector<int> update, int reg) {
    QTrans t;
    t.amp = std::move(amp);
    t.target = target;
    t.update = std::move(update);
    t.reg = reg;
    return t;
}

} // namespace

std::vector<QftBlockEntry> qft_block(const std::vector<int>& sources,
                                     const std::vector<int>& targets, long N) {
    if (static_cast<long>(sources.size()) != N || static_cast<long>(targets.size()) != N)
        throw ConstructionError("qft block: need exactly N sources and N targets");
    std::vector<QftBlockEntry> out;
    for (long j = 1; j <= N; ++j)
        for (long l = 1; l <= N; ++l)
            out.push_back({sources[static_cast<size_t>(j - 1)], AmpExpr::qft_entry(N, j, l),
                           targets[static_cast<size_t>(l - 1)]});
    return out;
}

QMachineSpec build_upal_qbca(long N) {
    if (N < 2) throw ConstructionError("upal: N must be >= 2");
    QMachineSpec spec;
    spec.mode = QMode::Realtime;
    spec.name = "upal_N" + std::to_string(N);
    spec.counters = 1;
    spec.maxUpdate = static_cast<int>(N);
    spec.alphabet = Alphabet({"a", "b"});
    int w1 = spec.add_reg("w1"), w2 = spec.add_reg("w2"), wr = spec.add_reg("wr");
    int q0 = spec.add_state("q0");
    int a0 = spec.add_state("a0");
    int r0 = spec.add_state("r0");
    std::vector<int> q(static_cast<size_t>(N) + 1), qp(q.size()), p(q.size()), r(q.size());
    for (long j = 1; j <= N; ++j) {
        q[static_cast<size_t>(j)] = spec.add_state("q" + std::to_string(j));
        qp[static_cast<size_t>(j)] = spec.add_state("q" + std::to_string(j) + "'");
        p[static_cast<size_t>(j)] = spec.add_state("p" + std::to_string(j));
        r[static_cast<size_t>(j)] = spec.add_state("r" + std::to_string(j));
    }
    spec.initial = q0;
    spec.accepting = {a0, p[static_cast<size_t>(N)]};
    const int A = 0, B = 1, CENT = spec.cent(), DOLLAR = spec.dollar();
    // mainpath
    spec.add(q0, CENT, trans(AmpExpr(Rational(1)), q0, upd(0), w1));
    for (long j = 1; j <= N; ++j)
        spec.add(q0, A, trans(AmpExpr::inv_sqrt(N), q[static_cast<size_t>(j)],
                              upd(static_cast<int>(j)), w1));
    spec.add(r0, A, trans(AmpExpr(Rational(1)), r0, upd(0), wr));
    spec.add(q0, B, trans(AmpExpr(Rational(1)), r0, upd(0), w1));
    spec.add(r0, B, trans(AmpExpr(Rational(1)), r0, upd(0), wr));
    spec.add(q0, DOLLAR, trans(AmpExpr(Rational(1)), a0, upd(0), w1));
    spec.add(r0, DOLLAR, trans(AmpExpr(Rational(1)), r0, upd(0), wr));
    // path_j
    for (long j = 1; j <= N; ++j) {
        int qj = q[static_cast<size_t>(j)], qpj = qp[static_cast<size_t>(j)];
        spec.add(qj, A, trans(AmpExpr(Rational(1)), qj, upd(static_cast<int>(j)), w2));
        spec.add(qj, B, trans(AmpExpr(Rational(1)), qpj, upd(static_cast<int>(-j)), w1));
        spec.add(qpj, B, trans(AmpExpr(Rational(1)), qpj, upd(static_cast<int>(-j)), w2));
        spec.add(qj, DOLLAR, trans(AmpExpr(Rational(1)), qj, upd(0), w1));
        for (long l = 1; l <= N; ++l)
            spec.add(qpj, DOLLAR,
                     trans(AmpExpr::qft_entry(N, j, l), p[static_cast<size_t>(l)], upd(0), w1));
        spec.add(qpj, A, trans(AmpExpr(Rational(1)), r[static_cast<size_t>(j)],
                               upd(static_cast<int>(j)), w1));
        // rejecting-path_j
        int rj = r[static_cast<size_t>(j)];
        spec.add(rj, A, trans(AmpExpr(Rational(1)), rj, upd(0), wr));
        spec.add(rj, B, trans(AmpExpr(Rational(1)), rj, upd(0), wr));
        spec.add(rj, DOLLAR, trans(AmpExpr(Rational(1)), rj, upd(0), wr));
    }
    return complete_spec(std::move(spec));
}

QMachineSpec build_upal_star_qbca(long N) {
    if (N < 2) throw ConstructionError("upal_star: N must be >= 2");
    QMachineSpec spec;
    spec.mode = QMode::Realtime;
    spec.name = "upal_star_N" + std::to_string(N);
    spec.counters = 1;
    spec.maxUpdate = static_cast<int>(N);
    spec.alphabet = Alphabet({"a", "b"});
    int w1 = spec.add_reg("w1"), w2 = spec.add_reg("w2"), w3 = spec.add_reg("w3"),
        wr = spec.add_reg("wr");
    int q0 = spec.add_state("q0");
    int a0 = spec.add_state("a0");
    int r0 = spec.add_state("r0");
    std::vector<int> q(static_cast<size_t>(N) + 1), qp(q.size()), p(q.size()), r(q.size());
    for (long j = 1; j <= N; ++j) {
        q[static_cast<size_t>(j)] = spec.add_state("q" + std::to_string(j));
        qp[static_cast<size_t>(j)] = spec.add_state("q" + std::to_string(j) + "'");
        p[static_cast<size_t>(j)] = spec.add_state("p" + std::to_string(j));
    }
    for (long j = 1; j <= N - 1; ++j)
        r[static_cast<size_t>(j)] = spec.add_state("r" + std::to_string(j));
    spec.initial = q0;
    spec.accepting = {a0, p[static_cast<size_t>(N)]};
    const int A = 0, B = 1, CENT = spec.cent(), DOLLAR = spec.dollar();
    spec.add(q0, CENT, trans(AmpExpr(Rational(1)), q0, upd(0), w1));
    for (long j = 1; j <= N; ++j)
        spec.add(q0, A, trans(AmpExpr::inv_sqrt(N), q[static_cast<size_t>(j)],
                              upd(static_cast<int>(j)), w1));
    spec.add(r0, A, trans(AmpExpr(Rational(1)), r0, upd(0), wr));
    spec.add(q0, B, trans(AmpExpr(Rational(1)), r0, upd(0), w1));
    spec.add(r0, B, trans(AmpExpr(Rational(1)), r0, upd(0), wr));
    spec.add(q0, DOLLAR, trans(AmpExpr(Rational(1)), a0, upd(0), w1));
    spec.add(r0, DOLLAR, trans(AmpExpr(Rational(1)), r0, upd(0), wr));
    for (long j = 1; j <= N; ++j) {
        int qj = q[static_cast<size_t>(j)], qpj = qp[static_cast<size_t>(j)];
        spec.add(qj, A, trans(AmpExpr(Rational(1)), qj, upd(static_cast<int>(j)), w2));
        spec.add(qj, B, trans(AmpExpr(Rational(1)), qpj, upd(static_cast<int>(-j)), w1));
        spec.add(qpj, B, trans(AmpExpr(Rational(1)), qpj, upd(static_cast<int>(-j)), w2));
        spec.add(qj, DOLLAR, trans(AmpExpr(Rational(1)), qj, upd(0), w1));
        for (long l = 1; l <= N; ++l)
            spec.add(qpj, DOLLAR,
                     trans(AmpExpr::qft_entry(N, j, l), p[static_cast<size_t>(l)], upd(0), w1));
        // Mid-input QFT on the first a after a b-run: targets are the
        // rejecting paths plus a re-split of the distinguished component,
        // which opens the next block with counter push +k.
        for (long l = 1; l <= N - 1; ++l)
            spec.add(qpj, A,
                     trans(AmpExpr::qft_entry(N, j, l), r[static_cast<size_t>(l)], upd(0), w3));
        for (long k = 1; k <= N; ++k)
            spec.add(qpj, A,
                     trans(AmpExpr(Rational(1, N)), q[static_cast<size_t>(k)],
                           upd(static_cast<int>(k)), w3));
    }
    for (long j = 1; j <= N - 1; ++j) {
        int rj = r[static_cast<size_t>(j)];
        spec.add(rj, A, trans(AmpExpr(Rational(1)), rj, upd(0), wr));
        spec.add(rj, B, trans(AmpExpr(Rational(1)), rj, upd(0), wr));
        spec.add(rj, DOLLAR, trans(AmpExpr(Rational(1)), rj, upd(0), wr));
    }
    return complete_spec(std::move(spec));
}

QMachineSpec build_upal1_qfa(long N) {
    if (N < 2) throw ConstructionError("upal1: N must be >= 2");
    QMachineSpec spec;
    spec.mode = QMode::OneWay;
    spec.name = "upal1_N" + std::to_string(N);
    spec.alphabet = Alphabet({"a", "b"});
    int wn = spec.add_reg("wn"), wa = spec.add_reg("wa", RegClass::Accept),
        wr = spec.add_reg("wr", RegClass::Reject);
    int q0 = spec.add_state("q0", Move::Stay);
    std::vector<int> f(static_cast<size_t>(N) + 1);
    for (long l = 1; l <= N; ++l)
        f[static_cast<size_t>(l)] = spec.add_state("f" + std::to_string(l), Move::Stay);
    std::vector<int> mq(static_cast<size_t>(N) + 1), mp(mq.size());
    std::vector<std::vector<int>> wq(mq.size()), wp(mq.size());
    for (long j = 1; j <= N; ++j) {
        std::string pj = "path" + std::to_string(j);
        mq[static_cast<size_t>(j)] = spec.add_state(pj + ".q1", Move::Right);
        mp[static_cast<size_t>(j)] = spec.add_state(pj + ".p1", Move::Right);
        auto& cq = wq[static_cast<size_t>(j)];
        cq.assign(static_cast<size_t>(j) + 2, -1);
        for (long k = 2; k <= j + 1; ++k)
            cq[static_cast<size_t>(k)] = spec.add_state(pj + ".q" + std::to_string(k), Move::Stay);
        auto& cp = wp[static_cast<size_t>(j)];
        cp.assign(static_cast<size_t>(N - j) + 3, -1);
        for (long k = 2; k <= N - j + 2; ++k)
            cp[static_cast<size_t>(k)] = spec.add_state(pj + ".p" + std::to_string(k), Move::Stay);
    }
    spec.initial = q0;
    const int A = 0, B = 1, CENT = spec.cent(), DOLLAR = spec.dollar();
    for (long j = 1; j <= N; ++j)
        spec.add(q0, CENT, trans(AmpExpr::inv_sqrt(N), mq[static_cast<size_t>(j)], {}, wn));
    for (long j = 1; j <= N; ++j) {
        const auto& cq = wq[static_cast<size_t>(j)];
        const auto& cp = wp[static_cast<size_t>(j)];
        int mqj = mq[static_cast<size_t>(j)], mpj = mp[static_cast<size_t>(j)];
        // j stationary steps per a before the b
        spec.add(mqj, A, trans(AmpExpr(Rational(1)), cq[2], {}, wn));
        for (long k = 2; k < j + 1; ++k)
            spec.add(cq[static_cast<size_t>(k)], A,
                     trans(AmpExpr(Rational(1)), cq[static_cast<size_t>(k + 1)], {}, wn));
        spec.add(cq[static_cast<size_t>(j + 1)], A, trans(AmpExpr(Rational(1)), mqj, {}, wn));
        // N-j+1 stationary steps per a after the b
        spec.add(mpj, A, trans(AmpExpr(Rational(1)), cp[2], {}, wn));
        for (long k = 2; k < N - j + 2; ++k)
            spec.add(cp[static_cast<size_t>(k)], A,
                     trans(AmpExpr(Rational(1)), cp[static_cast<size_t>(k + 1)], {}, wn));
        spec.add(cp[static_cast<size_t>(N - j + 2)], A, trans(AmpExpr(Rational(1)), mpj, {}, wn));
        spec.add(mqj, B, trans(AmpExpr(Rational(1)), mpj, {}, wn));
        spec.add(mpj, B, trans(AmpExpr(Rational(1)), mpj, {}, wr)); // second b
        spec.add(mqj, DOLLAR, trans(AmpExpr(Rational(1)), cq[2], {}, wr)); // no b seen
        for (long l = 1; l <= N; ++l)
            spec.add(mpj, DOLLAR,
                     trans(AmpExpr::qft_entry(N, j, l), f[static_cast<size_t>(l)], {},
                           l == N ? wa : wr));
    }
    return complete_spec(std::move(spec));
}

QMachineSpec build_upal_t_qfa(int t, long N) {
    if (t < 1) throw ConstructionError("upal_t: t must be >= 1");
    if (N < 2) throw ConstructionError("upal_t: N must be >= 2");
    QMachineSpec spec;
    spec.mode = QMode::OneWay;
    spec.name = "upal_t" + std::to_string(t) + "_N" + std::to_string(N);
    spec.alphabet = Alphabet({"a", "b"});
    int wn = spec.add_reg("wn"), wa = spec.add_reg("wa", RegClass::Accept),
        wr = spec.add_reg("wr", RegClass::Reject);
    int q0 = spec.add_state("q0", Move::Stay);
    spec.initial = q0;

    // Index tuples (j1..ji); rendered "1,2".
    auto tupleStr = [](const std::vector<long>& J) {
        std::string s;
        for (size_t i = 0; i < J.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(J[i]);
        }
        return s;
    };
    std::vector<std::vector<long>> tuples; // all depths 1..t
    {
        std::vector<std::vector<long>> level;
        for (long j = 1; j <= N; ++j) level.push_back({j});
        for (int depth = 1; depth <= t; ++depth) {
            tuples.insert(tuples.end(), level.begin(), level.end());
            if (depth == t) break;
            std::vector<std::vector<long>> next;
            for (const auto& J : level)
                for (long j = 1; j <= N; ++j) {
                    auto J2 = J;
                    J2.push_back(j);
                    next.push_back(J2);
                }
            level = next;
        }
    }
    std::map<std::vector<long>, int> leftMove, rightMove;
    std::map<std::vector<long>, std::vector<int>> leftWait, rightWait;
    std::map<std::vector<long>, std::vector<int>> qftReject; // keyed by parent tuple
    for (const auto& J : tuples) {
        long j = J.back();
        std::string base = "L[" + tupleStr(J) + "]";
        leftMove[J] = spec.add_state(base + ".m", Move::Right);
        auto& lw = leftWait[J];
        lw.assign(static_cast<size_t>(j) + 2, -1);
        for (long k = 2; k <= j + 1; ++k)
            lw[static_cast<size_t>(k)] = spec.add_state(base + ".w" + std::to_string(k), Move::Stay);
        base = "R[" + tupleStr(J) + "]";
        rightMove[J] = spec.add_state(base + ".m", Move::Right);
        auto& rw = rightWait[J];
        rw.assign(static_cast<size_t>(N - j) + 3, -1);
        for (long k = 2; k <= N - j + 2; ++k)
            rw[static_cast<size_t>(k)] = spec.add_state(base + ".w" + std::to_string(k), Move::Stay);
    }
    // Shared QFT reject targets per parent tuple (depth >= 1), plus the final
    // targets at the root.
    for (const auto& J : tuples) {
        if (static_cast<int>(J.size()) == t) continue;
        auto& xs = qftReject[J];
        xs.assign(static_cast<size_t>(N), -1);
        for (long l = 1; l <= N - 1; ++l)
            xs[static_cast<size_t>(l)] =
                spec.add_state("X[" + tupleStr(J) + "]." + std::to_string(l), Move::Stay);
    }
    std::vector<int> fin(static_cast<size_t>(N) + 1);
    for (long l = 1; l <= N; ++l)
        fin[static_cast<size_t>(l)] = spec.add_state("f" + std::to_string(l), Move::Stay);

    const int A = 0, B = 1, CENT = spec.cent(), DOLLAR = spec.dollar();
    for (long j = 1; j <= N; ++j)
        spec.add(q0, CENT, trans(AmpExpr::inv_sqrt(N), leftMove[{j}], {}, wn));
    for (const auto& J : tuples) {
        long j = J.back();
        int depth = static_cast<int>(J.size());
        int lm = leftMove[J], rm = rightMove[J];
        const auto& lw = leftWait[J];
        const auto& rw = rightWait[J];
        // Left phase: wait j per a.
        spec.add(lm, A, trans(AmpExpr(Rational(1)), lw[2], {}, wn));
        for (long k = 2; k < j + 1; ++k)
            spec.add(lw[static_cast<size_t>(k)], A,
                     trans(AmpExpr(Rational(1)), lw[static_cast<size_t>(k + 1)], {}, wn));
        spec.add(lw[static_cast<size_t>(j + 1)], A, trans(AmpExpr(Rational(1)), lm, {}, wn));
        if (depth < t) {
            for (long j2 = 1; j2 <= N; ++j2) {
                auto J2 = J;
                J2.push_back(j2);
                spec.add(lm, B, trans(AmpExpr::inv_sqrt(N), leftMove[J2], {}, wn));
            }
        } else {
            spec.add(lm, B, trans(AmpExpr(Rational(1)), rm, {}, wn));
        }
        spec.add(lm, DOLLAR, trans(AmpExpr(Rational(1)), lw[2], {}, wr)); // not enough b's
        // Right phase: wait N-j+1 per a.
        spec.add(rm, A, trans(AmpExpr(Rational(1)), rw[2], {}, wn));
        for (long k = 2; k < N - j + 2; ++k)
            spec.add(rw[static_cast<size_t>(k)], A,
                     trans(AmpExpr(Rational(1)), rw[static_cast<size_t>(k + 1)], {}, wn));
        spec.add(rw[static_cast<size_t>(N - j + 2)], A, trans(AmpExpr(Rational(1)), rm, {}, wn));
        if (depth >= 2) {
            // QFT on b: drop the rightmost index. The rejecting targets are
            // shared across the sibling paths so simultaneous arrivals cancel
            // there; the distinguished target resumes the parent path.
            std::vector<long> parent(J.begin(), J.end() - 1);
            const auto& xs = qftReject[parent];
            for (long l = 1; l <= N - 1; ++l)
                spec.add(rm, B,
                         trans(AmpExpr::qft_entry(N, j, l), xs[static_cast<size_t>(l)], {}, wr));
            spec.add(rm, B, trans(AmpExpr::qft_entry(N, j, N), rightMove[parent], {}, wn));
            spec.add(rm, DOLLAR, trans(AmpExpr(Rational(1)), rw[2], {}, wr)); // too few b's
        } else {
            spec.add(rm, B, trans(AmpExpr(Rational(1)), rw[2], {}, wr)); // too many b's
            for (long l = 1; l <= N; ++l)
                spec.add(rm, DOLLAR,
                         trans(AmpExpr::qft_entry(N, j, l), fin[static_cast<size_t>(l)], {},
                               l == N ? wa : wr));
        }
    }
    return complete_spec(std::move(spec));
}

} // namespace qalab
