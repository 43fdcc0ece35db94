#include "qalab/rational.hpp"

#include <cctype>
#include <ostream>

namespace qalab {

Rational::Rational(long num, long den) {
    if (den == 0) throw ConstructionError("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("rational: empty string");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                  (c == '-' && (i == 0 || s[i - 1] == '/'));
        if (!ok) throw ParseError("rational: bad character in '" + text + "'");
    }
    Rational r;
    if (mpq_set_str(r.v_.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("rational: cannot parse '" + text + "'");
    if (mpz_sgn(mpq_denref(r.v_.get_mpq_t())) == 0)
        throw ParseError("rational: zero denominator in '" + text + "'");
    r.v_.canonicalize();
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ConstructionError("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
        if (e < 0) throw ConstructionError("rational: 0 to a negative power");
        return Rational(0);
    }
    mpz_class num = v_.get_num(), den = v_.get_den();
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), k);
    Rational r;
    r.v_ = e > 0 ? mpq_class(pn, pd) : mpq_class(pd, pn);
    r.v_.canonicalize();
    return r;
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_str();
}

std::string Rational::num_str() const { return v_.get_num().get_str(); }
std::string Rational::den_str() const { return v_.get_den().get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::vector<long> first_primes(int k) {
    std::vector<long> ps;
    for (long n = 2; static_cast<int>(ps.size()) < k; ++n) {
        bool prime = true;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (prime) ps.push_back(n);
    }
    return ps;
}

} // namespace qalab
