#pragma once

#include <map>

#include "homcat/complex.hpp"

namespace homcat {

// Bounded double complex: horizontal d_h (p -> p+1), vertical d_v (q -> q+1),
// d_h^2 = d_v^2 = d_h d_v + d_v d_h = 0.
class DoubleComplex {
public:
    DoubleComplex(Field f, int p_lo, int q_lo, std::vector<std::vector<std::size_t>> dims,
                  std::vector<std::vector<Matrix>> dh, std::vector<std::vector<Matrix>> dv,
                  bool check = true);

    const Field& field() const { return field_; }
    int p_lo() const { return p_lo_; }
    int p_hi() const { return p_lo_ + static_cast<int>(dims_.size()) - 1; }
    int q_lo() const { return q_lo_; }
    int q_hi() const
    {
        return q_lo_ + (dims_.empty() ? -1 : static_cast<int>(dims_[0].size()) - 1);
    }

    std::size_t dim(int p, int q) const;
    Matrix dh(int p, int q) const; // (p,q) -> (p+1,q)
    Matrix dv(int p, int q) const; // (p,q) -> (p,q+1)

    void validate() const;

    // cells of total degree n in ascending p; offset into Tot^n coordinates
    struct Cell {
        int p, q;
        std::size_t offset, dim;
    };
    std::vector<Cell> cells(int n) const;
    std::size_t total_dim(int n) const;
    Matrix total_d(int n) const; // D = d_h + d_v on Tot^n
    CochainComplex total() const;

    int stabilization_page() const; // width + height + 1

private:
    Field field_;
    int p_lo_, q_lo_;
    std::vector<std::vector<std::size_t>> dims_;
    std::vector<std::vector<Matrix>> dh_, dv_;
};

// E_r^{p,q} as a subquotient Z >= B of the original bigraded space C^{p,q}:
// Z is the leading-term space of the r-fold zigzags from column p, B the
// leading terms of total boundaries coming from columns >= p-r+1.
struct PageCell {
    Subspace Z, B;
    std::size_t dim = 0;
    std::vector<Vec> reps; // canonical representatives of Z/B
};

struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, PageCell> cells;
    std::map<std::pair<int, int>, Matrix> d; // d_r : (p,q) -> (p+r, q-r+1), page bases
};

// leading-term tower spaces
Subspace page_Z(const DoubleComplex& dc, int r, int p, int q);
Subspace page_B(const DoubleComplex& dc, int r, int p, int q);

SpectralPage page(const DoubleComplex& dc, int r);
std::vector<SpectralPage> pages(const DoubleComplex& dc, int up_to);

// sum of E_infinity dims on each antidiagonal equals dim H^k(Tot)
bool abutment_check(const DoubleComplex& dc);
std::vector<std::pair<int, std::size_t>> total_cohomology_dims(const DoubleComplex& dc);

struct ClassLift {
    bool survives = false;
    int dies_at = -1;  // first obstructed page when !survives
    Vec alpha;         // coordinates in the canonical basis of H^{p+q}(Tot)
    Vec total_cocycle; // the canonical total representative (Tot coordinates)
};

// staircase lift of an E_2 cocycle at (p,q); Dies(r) maps to alpha = 0
ClassLift class_map(const DoubleComplex& dc, int p, int q, const Vec& a);

} // namespace homcat
