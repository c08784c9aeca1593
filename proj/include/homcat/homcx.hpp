#pragma once

#include "homcat/complex.hpp"

namespace homcat {

// One direct summand Hom(P^i, B^{m+i}) of a Hom-complex degree, flattened
// column-major (source basis vector major, target coordinate minor).
struct HomBlock {
    int i = 0;
    std::size_t rows = 0; // dim B^{m+i}
    std::size_t cols = 0; // dim P^i
    std::size_t offset = 0;
};

// Hom^m(P,B) = prod_i Hom(P^i, B^{m+i}) with
// d(s_i) = d_B o s_i - (-1)^m s_{i+1} o d_P. Blocks are ordered by ascending i
// so that the cone/cylinder identities below hold as literal matrix equality.
class HomComplex {
public:
    HomComplex(CochainComplex cx, CochainComplex p, CochainComplex b,
               std::map<int, std::vector<HomBlock>> blocks)
        : cx_(std::move(cx)), p_(std::move(p)), b_(std::move(b)), blocks_(std::move(blocks))
    {
    }

    const CochainComplex& complex() const { return cx_; }
    const CochainComplex& source() const { return p_; }
    const CochainComplex& target() const { return b_; }
    const std::vector<HomBlock>& blocks(int m) const;

private:
    CochainComplex cx_, p_, b_;
    std::map<int, std::vector<HomBlock>> blocks_;
    static const std::vector<HomBlock> kNoBlocks;
};

HomComplex hom_complex(const CochainComplex& p, const CochainComplex& b);

// Hom(p, g) : Hom(p, K) -> Hom(p, L) for g : K -> L, blockwise g^{m+i} o s_i.
ChainMap induced_hom_map(const CochainComplex& p, const ChainMap& g);

// Executable form of the cone/cylinder compatibility lemmas: true iff
// Con(Hom(p,g)) equals Hom(p, Con(g)) as based complexes under the canonical
// basis reindexing, and likewise for cylinders.
bool cone_hom_commutes(const CochainComplex& p, const ChainMap& g);

// The two halves separately (used by the property suite and its negative
// control).
bool cone_hom_matches(const CochainComplex& p, const ChainMap& g, const CochainComplex& cone_side);
bool cylinder_hom_matches(const CochainComplex& p, const ChainMap& g,
                          const CochainComplex& cyl_side);

} // namespace homcat
