#include "qtor/lattice.hpp"

#include "qtor/errors.hpp"
#include "qtor/smith.hpp"

namespace qtor {

BilinearLattice make_lattice(IntMat gram) {
    if (gram.rows() != gram.cols()) throw invalid_input("gram matrix must be square");
    if (!gram.is_symmetric()) throw invalid_input("gram matrix must be symmetric");
    return BilinearLattice{std::move(gram)};
}

bool is_valid_char(const BilinearLattice& f, const CharacteristicForm& c) {
    if (c.coeffs.size() != f.rank()) return false;
    for (std::size_t i = 0; i < f.rank(); ++i)
        if ((c.coeffs[i] - f.gram.at(i, i)) % 2 != 0) return false;
    return true;
}

void validate_char(const BilinearLattice& f, const CharacteristicForm& c) {
    if (c.coeffs.size() != f.rank()) throw invalid_input("characteristic form length mismatch");
    if (!is_valid_char(f, c))
        throw invalid_input("characteristic form fails the diagonal parity condition");
}

Triple make_triple(BilinearLattice f, CharacteristicForm c) {
    validate_char(f, c);
    return Triple{std::move(f), std::move(c)};
}

CharacteristicForm canonical_char(const BilinearLattice& f) {
    CharacteristicForm c;
    c.coeffs.reserve(f.rank());
    for (std::size_t i = 0; i < f.rank(); ++i) c.coeffs.push_back(f.gram.at(i, i));
    return c;
}

IntMat kernel_of_adjoint(const BilinearLattice& f) {
    SmithResult s = smith_normal_form(f.gram);
    IntMat k = s.v.columns(s.rank, f.rank() - s.rank);
    for (std::size_t j = 0; j < k.cols(); ++j) {
        for (std::size_t i = 0; i < k.rows(); ++i) {
            if (k.at(i, j) == 0) continue;
            if (k.at(i, j) < 0)
                for (std::size_t r = i; r < k.rows(); ++r) k.at(r, j) = -k.at(r, j);
            break;
        }
    }
    return k;
}

Split split_nondegenerate(const BilinearLattice& f) {
    SmithResult s = smith_normal_form(f.gram);
    std::size_t r = s.rank;
    IntMat section = s.v.columns(0, r);
    IntMat proj = inverse_unimodular(s.v).top_left(r, f.rank());
    IntMat fbar = section.transpose() * f.gram * section;
    return Split{make_lattice(std::move(fbar)), std::move(proj), std::move(section)};
}

KernelRestriction restrict_char_to_kernel(const Triple& t) {
    IntMat k = kernel_of_adjoint(t.lattice);
    KernelRestriction out;
    for (std::size_t j = 0; j < k.cols(); ++j) {
        Int v = 0;
        for (std::size_t i = 0; i < k.rows(); ++i) v += t.form.coeffs[i] * k.at(i, j);
        out.values.push_back(v);
    }
    out.content = content(out.values);
    return out;
}

WuClass char_to_wu(const BilinearLattice& f, const CharacteristicForm& c) {
    validate_char(f, c);
    if (f.rank() > 0 && f.gram.determinant() == 0)
        throw invalid_input("Wu class requires a nondegenerate form");
    WuClass w;
    w.coords = rat_inverse(RatMat::from_int(f.gram)).mul(to_rational(c.coeffs));
    w.integral = true;
    for (const Rational& x : w.coords)
        if (denom(x) != 1) w.integral = false;
    return w;
}

CharacteristicForm wu_to_char(const BilinearLattice& f, const WuClass& w) {
    if (w.coords.size() != f.rank()) throw invalid_input("Wu class length mismatch");
    if (f.rank() > 0 && f.gram.determinant() == 0)
        throw invalid_input("Wu class requires a nondegenerate form");
    CharacteristicForm c;
    for (std::size_t i = 0; i < f.rank(); ++i) {
        Rational v = 0;
        for (std::size_t j = 0; j < f.rank(); ++j) v += Rational(f.gram.at(i, j)) * w.coords[j];
        if (denom(v) != 1) throw invalid_input("Wu class does not induce an integral covector");
        c.coeffs.push_back(numer(v));
    }
    validate_char(f, c);
    return c;
}

CharacteristicForm retract_char(const BilinearLattice& f, const IntMat& section,
                                const CharacteristicForm& c) {
    if (section.rows() != f.rank() || c.coeffs.size() != f.rank())
        throw invalid_input("section dimensions do not match the lattice");
    CharacteristicForm out;
    for (std::size_t j = 0; j < section.cols(); ++j) {
        Int v = 0;
        for (std::size_t i = 0; i < section.rows(); ++i) v += c.coeffs[i] * section.at(i, j);
        out.coeffs.push_back(v);
    }
    return out;
}

Triple orthogonal_sum(const Triple& a, const Triple& b) {
    Triple out;
    out.lattice = make_lattice(block_diag(a.lattice.gram, b.lattice.gram));
    out.form.coeffs = a.form.coeffs;
    out.form.coeffs.insert(out.form.coeffs.end(), b.form.coeffs.begin(), b.form.coeffs.end());
    return out;
}

}  // namespace qtor
