#pragma once

#include "homcat/cech.hpp"

namespace homcat {

// Sector-decomposed Cech/algebra model: a nerve, a finite-dimensional
// algebra, and per-sector module chains F_0..F_k supported on vertex sets.
// The global objects are the direct sums over sectors; presheaf values on a
// face collect the sectors whose support contains it.
struct ModelSector {
    std::vector<int> support;     // vertex set
    std::vector<AModule> modules; // F_0..F_k on this sector
};

struct CechAlgebraModel {
    Field field = Field::rationals();
    AlgebraPtr alg;
    Nerve nerve;
    std::size_t slots = 0; // k
    std::vector<ModelSector> sectors;

    void validate() const;
    bool cyclic() const; // F_k == F_0 sectorwise
};

// a_j in H^{q}(X, Ext^{p}(F_{slot-1}, F_slot))
struct LocalOperator {
    std::size_t slot = 1;
    int p = 0, q = 0;
    // per sector, per q-face of the sector subnerve (lex order): coordinates
    // in the canonical Ext^p basis of the sector pair
    std::vector<std::vector<Vec>> data;

    // test hook: run the class-map step on a supplied double complex with the
    // given raw cocycle at cell (q, p) instead of the model-built one
    std::optional<DoubleComplex> dc_override;
    Vec dc_cocycle;
};

// layout of the model's string space for the pair (F_a, F_b) at total
// degree n: per sector, per (cech degree i, ext degree j) with i+j = n,
// a block of dim h_i(N_z) * ext_j(z); index = offset + alpha*ext_j + beta
struct StringSpaceLayout {
    struct Block {
        std::size_t sector;
        int i, j;
        std::size_t offset, h_dim, e_dim;
    };
    std::size_t total = 0;
    std::vector<Block> blocks;
};
StringSpaceLayout string_space_layout(const CechAlgebraModel& model, std::size_t a, std::size_t b,
                                      int n);

// layout of H^n(X, O) in the model: per sector, H^n(N_z) x algebra basis
struct TopScalarLayout {
    struct Block {
        std::size_t sector;
        std::size_t offset, h_dim;
    };
    std::size_t total = 0;
    std::size_t alg_dim = 0;
    std::vector<Block> blocks;
};
TopScalarLayout top_scalar_layout(const CechAlgebraModel& model, int n);

// t : Ext^n(F_0, F_0) -> field, as coefficients over string_space_layout
struct VolumeFunctional {
    int n = 0;
    Vec coeffs;
    bool nondegenerate_flag = false;
};

struct CorrelationReport {
    Scalar value;
    std::vector<std::string> statuses; // per operator: "survives" or "dies(r)"
    bool any_died = false;
};

// <a_1 ... a_k> = t(alpha_1 * ... * alpha_k); dying classes give 0
CorrelationReport correlate(const CechAlgebraModel& model, const std::vector<LocalOperator>& ops,
                            const VolumeFunctional& vol);

// t = vol_scalar o tr for a free F_0; NotFree otherwise. vol_scalar is given
// over top_scalar_layout(model, n).
VolumeFunctional locally_free_trace(const CechAlgebraModel& model, int n, const Vec& vol_scalar);

// full-rank check of (sigma, tau) |-> t(sigma * tau) on complementary
// degrees; meaningful for free F_0 (callers set nondegenerate_flag from it)
bool volume_nondegenerate_on_free(const CechAlgebraModel& model, const VolumeFunctional& vol);

struct EquivalenciaReport {
    bool equal = false;
    Scalar via_spectral; // class_map + Yoneda route
    Scalar via_cup;      // direct Cech cup + trace route
};
// Route equality for free modules and p_j = 0 operators. wrong_sign flips the
// sign of every cup step (negative control for the test suite).
EquivalenciaReport equivalencia_check(const CechAlgebraModel& model,
                                      const std::vector<LocalOperator>& ops,
                                      const Vec& vol_scalar, bool wrong_sign = false);

// canonical operator construction from the sector ext presheaf (test/CLI aid):
// the basis of H^q(X, Ext^p(F_{slot-1}, F_slot)) as LocalOperators
std::vector<LocalOperator> operator_basis(const CechAlgebraModel& model, std::size_t slot, int p,
                                          int q);

} // namespace homcat
