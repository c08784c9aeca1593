#pragma once

#include <map>
#include <vector>

#include "homcat/matrix.hpp"

namespace homcat {

struct Cohomology {
    std::size_t dim = 0;
    std::vector<Vec> reps; // canonical cocycle representatives
};

// Bounded cochain complex of based vector spaces; d raises degree by one and
// d o d = 0 exactly.
class CochainComplex {
public:
    CochainComplex() : CochainComplex(Field::rationals()) {}
    explicit CochainComplex(Field f) : field_(f), lo_(0) {}
    CochainComplex(Field f, int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs,
                   bool check = true);

    static CochainComplex zero(Field f) { return CochainComplex(f); }
    static CochainComplex one_term(Field f, int degree, std::size_t dim);
    // two adjacent terms with the given differential (degree -> degree+1)
    static CochainComplex two_term(Field f, int degree, const Matrix& d);

    const Field& field() const { return field_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; } // lo-1 when empty
    bool empty_support() const { return dims_.empty(); }

    std::size_t dim(int n) const;
    Matrix d(int n) const; // dim(n+1) x dim(n)

    void validate() const;   // shapes and d^2 = 0
    bool dd_is_zero() const; // d^2 = 0 as a predicate

    Cohomology cohomology(int n) const;
    std::vector<std::size_t> cohomology_dims() const; // over [lo, hi]
    long euler_characteristic() const;

    // coordinates of a cocycle's class in the canonical cohomology basis
    Vec class_coordinates(int n, const Vec& cocycle) const;

private:
    Field field_;
    int lo_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> diffs_; // diffs_[i]: degree lo_+i -> lo_+i+1
};

// exact degreewise comparison over the union of supports
bool equal_as_based_complexes(const CochainComplex& a, const CochainComplex& b);

CochainComplex shift(const CochainComplex& c, int k);

// Degreewise map of complexes commuting with the differentials.
struct ChainMap {
    CochainComplex src, dst;
    int lo = 0;                // degree of comps[0]
    std::vector<Matrix> comps; // zero outside

    Matrix at(int n) const; // dst.dim(n) x src.dim(n)
    void validate() const;
    bool commutes() const;

    static ChainMap make(const CochainComplex& src, const CochainComplex& dst, int lo,
                         std::vector<Matrix> comps, bool check = true);
    static ChainMap identity(const CochainComplex& c);
    static ChainMap zero(const CochainComplex& src, const CochainComplex& dst);
    static ChainMap scalar_map(const CochainComplex& c, const Scalar& s);

    ChainMap compose_after(const ChainMap& first) const; // this o first
    Matrix induced_on_cohomology(int n) const;           // H^n(src) -> H^n(dst)
};

// mapping cone: Con(f)^m = K^{m+1} (+) L^m, d = [[-d_K, 0], [-f, d_L]]
CochainComplex cone(const ChainMap& f);

struct CylinderData {
    CochainComplex cyl;    // Cyl(f)^m = B^m (+) B^{m+1} (+) A^m
    ChainMap include_src;  // B -> Cyl(f)
    ChainMap project_cone; // Cyl(f) -> Con(f)
};
CylinderData cylinder(const ChainMap& f);

// Short exact sequence of complexes 0 -> B -> C -> D -> 0 (checked degreewise).
struct ShortExactSeq {
    ChainMap inc;  // B -> C
    ChainMap proj; // C -> D
    void validate() const; // NotExact if a degree fails exactness
};

// The zigzag connecting homomorphism H^n(D) -> H^{n+1}(B), one matrix per
// degree, representatives chosen by canonical solves.
std::map<int, Matrix> connecting(const ShortExactSeq& ses);

// true iff ker = im at every interior node of V_0 -> V_1 -> ... -> V_m
bool exactness_check(const std::vector<Matrix>& maps);

// The long exact cohomology sequence of a SES, flattened into (dims, maps)
// ready for exactness_check:  ... H^n(B) -> H^n(C) -> H^n(D) -> H^{n+1}(B) ...
struct LongExactSequence {
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps; // maps[i] : dims[i] -> dims[i+1]
    std::vector<std::string> labels;
    bool exact = false;
};
LongExactSequence les_of_ses(const ShortExactSeq& ses);

} // namespace homcat
