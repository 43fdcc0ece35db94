#include "qalab/amplitude.hpp"

#include <cmath>

namespace qalab {

namespace {

// Reduce into [0, 1).
Rational wrap_phase(Rational p) {
    while (p.sign() < 0) p += Rational(1);
    while (p >= Rational(1)) p -= Rational(1);
    return p;
}

} // namespace

AmpExpr::AmpExpr(Rational c, long r, Rational p) : coef(std::move(c)), root(r), phase(wrap_phase(std::move(p))) {
    if (root < 1) throw ConstructionError("amplitude: root must be >= 1");
    if (coef.is_zero()) {
        root = 1;
        phase = Rational(0);
    }
}

AmpExpr AmpExpr::qft_entry(long N, long j, long l) {
    if (N < 2) throw InputError("qft: N must be >= 2");
    long m = ((j % N) * (l % N)) % N;
    return AmpExpr(Rational(1), N, Rational(m, N));
}

Amplitude AmpExpr::value() const {
    double mag = coef.to_double();
    if (root != 1) mag /= std::sqrt(static_cast<double>(root));
    // Quarter turns are exact; everything else goes through trig.
    if (phase.is_zero()) return {mag, 0.0};
    if (phase == Rational(1, 2)) return {-mag, 0.0};
    if (phase == Rational(1, 4)) return {0.0, mag};
    if (phase == Rational(3, 4)) return {0.0, -mag};
    double theta = 2.0 * M_PI * phase.to_double();
    return {mag * std::cos(theta), mag * std::sin(theta)};
}

std::vector<std::vector<Amplitude>> qft_coefficients(long N) {
    if (N < 2) throw InputError("qft: N must be >= 2");
    std::vector<std::vector<Amplitude>> table(static_cast<size_t>(N),
                                              std::vector<Amplitude>(static_cast<size_t>(N)));
    for (long l = 1; l <= N; ++l)
        for (long j = 1; j <= N; ++j)
            table[static_cast<size_t>(l - 1)][static_cast<size_t>(j - 1)] =
                AmpExpr::qft_entry(N, j, l).value();
    return table;
}

} // namespace qalab
