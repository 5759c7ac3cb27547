#include "ccf/ifs.hpp"

#include "ccf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccf {

namespace {

bool lex_less(cplx a, cplx b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

Alphabet Alphabet::i1() {
    Alphabet a;
    a.kind = AlphabetKind::I1;
    a.symmetry = Symmetry::ConjugationSymmetric;
    a.gamma = 1.0;
    a.tau = 1.0;
    return a;
}

Alphabet Alphabet::i2() {
    Alphabet a;
    a.kind = AlphabetKind::I2;
    a.symmetry = Symmetry::MapsToUpperHalf;
    a.gamma = 1.0;
    a.tau = 1.0;
    return a;
}

Alphabet Alphabet::i3() {
    Alphabet a;
    a.kind = AlphabetKind::I3;
    a.symmetry = Symmetry::ConjugationSymmetric;
    a.gamma = 1.0;
    a.tau = 0.0;
    for (int m = 1; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n)
            a.members.emplace_back(m, n);
    return a;
}

Alphabet Alphabet::special_example() {
    std::vector<cplx> mem;
    for (int m = 1; m <= 3; ++m) {
        mem.emplace_back(m, -1.0);
        mem.emplace_back(m, 1.0);
    }
    return custom_finite(std::move(mem));
}

Alphabet Alphabet::custom_finite(std::vector<cplx> members) {
    if (members.empty())
        throw std::invalid_argument("custom alphabet must be nonempty");
    std::sort(members.begin(), members.end(), lex_less);
    for (std::size_t i = 1; i < members.size(); ++i)
        if (members[i] == members[i - 1])
            throw std::invalid_argument("custom alphabet has duplicate members");

    double gamma = members.front().real();
    for (cplx b : members)
        gamma = std::min(gamma, b.real());
    if (gamma < 1.0)
        throw std::invalid_argument("custom alphabet members must satisfy Re(b) >= 1");

    bool conj_closed = true;
    for (cplx b : members)
        if (!std::binary_search(members.begin(), members.end(), std::conj(b), lex_less)) {
            conj_closed = false;
            break;
        }

    Alphabet a;
    a.kind = AlphabetKind::CustomFinite;
    a.gamma = gamma;
    a.tau = 0.0;
    a.members = std::move(members);
    if (conj_closed) {
        a.symmetry = Symmetry::ConjugationSymmetric;
    } else {
        for (cplx b : a.members)
            if (b.imag() > -1.0)
                throw std::invalid_argument(
                    "custom alphabet must be conjugation closed or have Im(b) <= -1 throughout");
        a.symmetry = Symmetry::MapsToUpperHalf;
    }
    return a;
}

std::vector<cplx> enumerate_truncated(const Alphabet& a, double radius) {
    std::vector<cplx> out;
    if (a.finite()) {
        const double r2 = radius * radius;
        for (cplx b : a.members)
            if (!(std::norm(b) > r2)) // radius may be inf
                out.push_back(b);
        return out;
    }

    if (!std::isfinite(radius))
        throw std::invalid_argument("infinite alphabets require a finite truncation radius");
    const double r2 = radius * radius;
    const int mmax = static_cast<int>(std::floor(radius));
    for (int m = 1; m <= mmax; ++m) {
        double rem = r2 - static_cast<double>(m) * m;
        if (rem < 0.0)
            break;
        int nmax = static_cast<int>(std::floor(std::sqrt(rem)));
        while (static_cast<double>(m) * m + static_cast<double>(nmax + 1) * (nmax + 1) <= r2)
            ++nmax;
        while (nmax > 0 && static_cast<double>(m) * m + static_cast<double>(nmax) * nmax > r2)
            --nmax;
        if (a.kind == AlphabetKind::I1) {
            for (int n = -nmax; n <= nmax; ++n)
                out.emplace_back(m, n);
        } else { // I2
            for (int n = -nmax; n <= -1; ++n)
                out.emplace_back(m, n);
        }
    }
    return out;
}

cplx fold_to_upper(cplx p, Symmetry symmetry) {
    if (symmetry == Symmetry::ConjugationSymmetric)
        return p.imag() < 0.0 ? std::conj(p) : p;
    if (p.imag() < 0.0) {
        if (p.imag() < -1e-12)
            throw SymmetryViolationError("image fell below the real axis for an upper-half alphabet");
        return {p.real(), 0.0};
    }
    return p;
}

MobiusWord compose_word(std::span<const cplx> digits) {
    if (digits.empty())
        throw std::invalid_argument("word must be nonempty");
    MobiusWord w;
    w.a_prev = 0.0;
    w.a_last = 1.0;
    w.b_prev = 1.0;
    w.b_last = digits[0];
    w.length = 1;
    for (std::size_t j = 1; j < digits.size(); ++j) {
        cplx a_next = w.a_prev + digits[j] * w.a_last;
        cplx b_next = w.b_prev + digits[j] * w.b_last;
        w.a_prev = w.a_last;
        w.a_last = a_next;
        w.b_prev = w.b_last;
        w.b_last = b_next;
        ++w.length;
    }
    return w;
}

cplx word_image(const MobiusWord& w, cplx z) {
    return (w.a_prev * z + w.a_last) / (w.b_prev * z + w.b_last);
}

double word_weight(const MobiusWord& w, cplx z, double s) {
    return std::pow(std::norm(w.b_prev), -s) * std::pow(std::norm(z + w.b_last / w.b_prev), -s);
}

} // namespace ccf
