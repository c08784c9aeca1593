#pragma once

#include <map>

#include "homcat/algebra.hpp"
#include "homcat/complex.hpp"
#include "homcat/spectral.hpp"

namespace homcat {

// Finite abstract simplicial complex on vertices 0..vertex_count-1; faces are
// sorted vertex lists, closed under subsets, globally ordered by (size, lex).
struct Nerve {
    std::size_t vertex_count = 0;
    std::vector<std::vector<int>> faces;

    static Nerve closure(std::size_t vertex_count, std::vector<std::vector<int>> generating);
    void validate() const;
    int max_dim() const;
    std::vector<std::size_t> faces_of_dim(int q) const; // indices into faces
    long face_index(const std::vector<int>& f) const;   // -1 when absent
    bool has_face(const std::vector<int>& f) const { return face_index(f) >= 0; }
    // the full subcomplex on a vertex subset
    Nerve full_subcomplex(const std::vector<int>& vertices) const;
};

// Presheaf of based vector spaces on the nerve: a dimension per face and a
// restriction matrix per codim-1 inclusion; higher restrictions are
// composites (functoriality is validated on codim-2 squares).
struct NervePresheaf {
    Nerve nerve;
    Field field = Field::rationals();
    std::vector<std::size_t> dims;                     // per face index
    std::map<std::pair<std::size_t, std::size_t>, Matrix> restr; // (from, to), codim 1

    static NervePresheaf constant(const Nerve& n, Field f, std::size_t dim);
    void validate() const; // FunctorialityViolation
    const Matrix& restriction(std::size_t from, std::size_t to) const;
    Matrix restriction_chain(std::size_t from, std::size_t to) const;
};

// skyscraper: each point lives on a set of vertex opens with a fixed stalk
NervePresheaf skyscraper_presheaf(const Nerve& n, Field f,
                                  const std::vector<std::vector<int>>& point_opens,
                                  std::size_t stalk_dim);

struct CechComplexData {
    CochainComplex cx;
    // per degree q: offset of each q-face's block inside the degree space
    std::vector<std::vector<std::size_t>> offsets;
    std::vector<std::vector<std::size_t>> face_ids; // face index per block
};
CechComplexData cech_complex(const NervePresheaf& p);

struct CechClass {
    int q = 0;
    Vec cochain; // concatenated per-face coordinates at degree q
};

struct VertexSpace {
    std::size_t dim = 0;
    std::vector<CechClass> basis;
};
VertexSpace vertex_space(const NervePresheaf& p, int q);

// Presheaf of complexes: one cochain complex per face, chain-map restrictions.
struct ComplexPresheaf {
    Nerve nerve;
    Field field = Field::rationals();
    std::vector<CochainComplex> cx; // per face index
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Matrix>> restr; // components
    // components are indexed from the complex's lo degree of the source face

    static ComplexPresheaf constant(const Nerve& n, const CochainComplex& c);
    void validate() const;
    Matrix restriction_at(std::size_t from, std::size_t to, int deg) const; // codim 1
    ChainMap restriction_map(std::size_t from, std::size_t to) const;       // codim 1
};

// per-point complexes supported on vertex subsets, projections as restrictions
ComplexPresheaf skyscraper_complex_presheaf(
    const Nerve& n, Field f,
    const std::vector<std::pair<std::vector<int>, CochainComplex>>& points);

struct HyperData {
    DoubleComplex dc; // horizontal = Cech degree, vertical = complex degree
    std::vector<std::pair<int, std::size_t>> total_dims;
};
HyperData hypercohomology(const ComplexPresheaf& cp);

// the vertical sign variant (sign on horizontal rows instead); used to verify
// total dims do not depend on the anticommutation convention
DoubleComplex hyper_double_complex_row_signs(const ComplexPresheaf& cp);

// del* f = 0, delta f = del* h, delta h = 0 for a (0,1)/(1,0) cochain pair
bool globaxten_check(const std::vector<Vec>& f, const std::vector<Vec>& h,
                     const ComplexPresheaf& cp);

// presheaf of vertical cohomologies H^k(cx_sigma) with induced restrictions
NervePresheaf ext_presheaf(const ComplexPresheaf& cp, int k);

// One sector of a Local-to-Global input: a module SES on a vertex support.
struct SectorSes {
    std::vector<int> support; // vertex set carrying this sector
    ModuleMap inject;         // B -> C
    ModuleMap project;        // C -> D
    AModule f;                // the fixed source module F on this sector
};

struct VertexLesReport {
    LongExactSequence les;
    std::vector<std::size_t> ker_dims, mid_dims, im_dims; // per Cech degree
    bool exact = false;
};
// Prop-style exact sequence ... H^q(Ker b) -> H^q(Ext^k(F,C)) -> H^q(Im b) ...
VertexLesReport vertex_les(const Nerve& nerve, const std::vector<SectorSes>& sectors,
                           std::size_t k, std::size_t length);

} // namespace homcat
