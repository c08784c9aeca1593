#pragma once

#include "homcat/complex.hpp"

namespace homcat {

// univariate polynomial, coefficients low to high
using Poly = Vec;

Scalar poly_eval(const Field& f, const Poly& p, const Scalar& x);
Matrix poly_eval_matrix(const Field& f, const Poly& p, const Matrix& x);
bool poly_is_monic(const Poly& p);

// x^d + a_{d-1} x^{d-1} + ... + a_0 acting on k[x]/(f) in the basis 1..x^{d-1}
Matrix companion_matrix(const Field& f, const Poly& p);

// f_1(x_1), ..., f_n(x_n): separated regular sequence, each monic nonconstant
struct SeparatedSequence {
    Field field = Field::rationals();
    std::vector<Poly> polys;
    std::size_t n() const { return polys.size(); }
    void validate() const;
};

// finite-dimensional evaluation model: n pairwise-commuting variable actions
struct EvalModule {
    Field field = Field::rationals();
    std::size_t dim = 0;
    std::vector<Matrix> var_actions;
    void validate() const; // commuting
    std::size_t n() const { return var_actions.size(); }
};

// tensor product of k[x_i]/(f_i) with companion-matrix actions
EvalModule quotient_module(const SeparatedSequence& seq);

// Hom of the Koszul complex of seq into m, with exterior-subset blocks in
// colexicographic order; degree p has C(n,p) blocks of size dim(m).
struct KoszulHomComplex {
    CochainComplex cx; // degrees 0..n
    std::size_t n = 0;
    std::size_t block_dim = 0;                       // dim(m)
    std::vector<std::vector<std::vector<int>>> basis; // per degree: subsets, colex
};
KoszulHomComplex koszul_hom(const SeparatedSequence& seq, const EvalModule& m);

// Ext^p dims of the D0 example, computed as cohomology of
// koszul_hom(seq, quotient_module(seq)) -- never from the closed formula.
std::vector<std::size_t> d0_ext_dims(const SeparatedSequence& seq);

// all p-subsets of {1..n} in colexicographic order
std::vector<std::vector<int>> subsets_colex(std::size_t n, std::size_t p);

std::size_t binomial(std::size_t n, std::size_t k);

// Point decomposition of the quotient module for sequences whose polynomials
// split into linear factors over the field (with multiplicity); NotSplit
// otherwise. Local factor at a root r of multiplicity e is k[x]/((x-r)^e).
struct PointLocal {
    Vec root;         // one coordinate per variable
    EvalModule local; // dim = product of multiplicities
};
std::vector<PointLocal> split_points(const SeparatedSequence& seq);

// distinct roots with multiplicities; NotSplit when the polynomial does not
// factor into linear factors over the field
std::vector<std::pair<Scalar, std::size_t>> linear_roots(const Field& f, const Poly& p);

} // namespace homcat
