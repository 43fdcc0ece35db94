#pragma once

#include <complex>
#include <vector>

#include "qalab/rational.hpp"

namespace qalab {

using Amplitude = std::complex<double>;

// Symbolic amplitude (coef / sqrt(root)) * e^{2*pi*i*phase}. Every amplitude
// appearing in the paper-derived machines has this shape, so machine files
// keep full precision and builders never round where a value is exact.
// Phase is kept reduced into [0, 1); integer phases collapse to exactly 1.
struct AmpExpr {
    Rational coef{1};
    long root = 1;
    Rational phase{0};

    AmpExpr() = default;
    explicit AmpExpr(Rational c, long r = 1, Rational p = Rational(0));

    // e^{2*pi*i*j*l/N} / sqrt(N)
    static AmpExpr qft_entry(long N, long j, long l);
    static AmpExpr inv_sqrt(long N) { return AmpExpr(Rational(1), N); }

    Amplitude value() const;
    bool is_default_root() const { return root == 1; }
    bool is_default_phase() const { return phase.is_zero(); }

    friend bool operator==(const AmpExpr& a, const AmpExpr& b) {
        return a.coef == b.coef && a.root == b.root && a.phase == b.phase;
    }
};

// N-way QFT coefficient table: entry [l-1][j-1] = e^{2*pi*i*j*l/N} / sqrt(N)
// for 1 <= j, l <= N. Column j is the image of domain element d_j; row N is
// the distinguished target. Unitary within 1e-12. N < 2 is a usage error.
std::vector<std::vector<Amplitude>> qft_coefficients(long N);

} // namespace qalab
