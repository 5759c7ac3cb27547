#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ccf {

using cplx = std::complex<double>;

enum class AlphabetKind { I1, I2, I3, CustomFinite };

// ConjugationSymmetric sets are closed under conjugation, so images are folded onto
// the upper half plane; MapsToUpperHalf sets send the upper half plane into itself
enum class Symmetry { ConjugationSymmetric, MapsToUpperHalf };

struct Alphabet {
    AlphabetKind kind = AlphabetKind::CustomFinite;
    Symmetry symmetry = Symmetry::ConjugationSymmetric;
    double gamma = 1.0; // min Re(b), at least 1
    double tau = 0.0;   // convergence abscissa of sum |b|^-2s; s must stay above it
    std::vector<cplx> members; // finite kinds only, sorted by (Re, Im)

    bool finite() const { return kind == AlphabetKind::I3 || kind == AlphabetKind::CustomFinite; }

    static Alphabet i1(); // m + ni, m >= 1, n in Z
    static Alphabet i2(); // m + ni, m >= 1, n <= -1
    static Alphabet i3(); // m in {1,2}, n in {0,+-1,+-2}
    static Alphabet special_example(); // {1+-i, 2+-i, 3+-i}, used with the product weight family
    static Alphabet custom_finite(std::vector<cplx> members);
};

// members with |b| <= radius, sorted by (Re, Im); radius may be infinite for finite kinds
std::vector<cplx> enumerate_truncated(const Alphabet& a, double radius);

inline cplx apply_map(cplx b, cplx z) { return 1.0 / (z + b); }

// |theta_b'(z)|^s = |z + b|^{-2s}
inline double map_weight(cplx b, cplx z, double s) { return std::pow(std::norm(z + b), -s); }

cplx fold_to_upper(cplx p, Symmetry symmetry);

// word composition via continuants: theta_{b1} o ... o theta_{bn} as a Mobius map
// (A_prev z + A_last)/(B_prev z + B_last)
struct MobiusWord {
    cplx a_prev, a_last, b_prev, b_last;
    int length = 0;
};

MobiusWord compose_word(std::span<const cplx> digits);

cplx word_image(const MobiusWord& w, cplx z);

// |theta_w'(z)|^s = |B_prev|^{-2s} |z + B_last/B_prev|^{-2s}
double word_weight(const MobiusWord& w, cplx z, double s);

} // namespace ccf
