#include <doctest.h>

#include "homcat/spectral.hpp"
#include "homcat/verify.hpp"

using namespace homcat;

namespace {

const Field Q = Field::rationals();

DoubleComplex one_row(Rng& rng)
{
    // a random complex laid out as the q = 0 row
    CochainComplex c = gen::random_complex(Q, rng, 0, 4, 2);
    std::vector<std::vector<std::size_t>> dims;
    std::vector<std::vector<Matrix>> dh, dv;
    for (int p = 0; p <= c.hi(); ++p) {
        dims.push_back({c.dim(p)});
        dh.push_back({c.d(p)});
        dv.push_back({Matrix::zero(Q, 0, c.dim(p))});
    }
    return DoubleComplex(Q, 0, 0, std::move(dims), std::move(dh), std::move(dv));
}

} // namespace

TEST_CASE("double complex validation")
{
    // 2x2 grid with anticommuting isomorphisms: E_2 vanishes
    Matrix one(Q, 1, 1);
    one.set(0, 0, Scalar(1));
    Matrix minus = -one;
    std::vector<std::vector<std::size_t>> dims = {{1, 1}, {1, 1}};
    std::vector<std::vector<Matrix>> dh = {{one, one}, {Matrix::zero(Q, 0, 1), Matrix::zero(Q, 0, 1)}};
    std::vector<std::vector<Matrix>> dv = {{one, Matrix::zero(Q, 0, 1)},
                                           {minus, Matrix::zero(Q, 0, 1)}};
    DoubleComplex dc(Q, 0, 0, dims, dh, dv);
    SpectralPage e2 = page(dc, 2);
    for (const auto& [pq, cell] : e2.cells)
        CHECK(cell.dim == 0);
    CHECK(abutment_check(dc));

    // breaking anticommutativity is rejected
    std::vector<std::vector<Matrix>> dv_bad = {{one, Matrix::zero(Q, 0, 1)},
                                               {one, Matrix::zero(Q, 0, 1)}};
    CHECK_THROWS_AS(DoubleComplex(Q, 0, 0, dims, dh, dv_bad), Error);
}

TEST_CASE("single-row double complexes degenerate at E_2")
{
    Rng rng(111);
    for (int i = 0; i < 10; ++i) {
        DoubleComplex dc = one_row(rng);
        SpectralPage e2 = page(dc, 2);
        SpectralPage einf = page(dc, dc.stabilization_page());
        for (const auto& [pq, cell] : e2.cells) {
            CHECK(cell.dim == einf.cells.at(pq).dim);
            CHECK(e2.d.at(pq).is_zero());
        }
        CHECK(abutment_check(dc));
        // termwise: E_inf at (p, 0) equals H^p of the row
        CochainComplex tot = dc.total();
        for (const auto& [pq, cell] : einf.cells)
            if (pq.second == 0)
                CHECK(cell.dim == tot.cohomology(pq.first).dim);
    }
}

TEST_CASE("two-term column stabilizes at E_2")
{
    Matrix d(Q, 1, 2);
    d.set(0, 0, Scalar(1));
    std::vector<std::vector<std::size_t>> dims = {{2, 1}};
    std::vector<std::vector<Matrix>> dh = {{Matrix::zero(Q, 0, 2), Matrix::zero(Q, 0, 1)}};
    std::vector<std::vector<Matrix>> dv = {{d, Matrix::zero(Q, 0, 1)}};
    DoubleComplex dc(Q, 0, 0, dims, dh, dv);
    SpectralPage e2 = page(dc, 2);
    CHECK(e2.cells.at({0, 0}).dim == 1);
    CHECK(e2.cells.at({0, 1}).dim == 0);
    CHECK(abutment_check(dc));
}

TEST_CASE("class_map: survivors, the zero class, and the dying fixture")
{
    Rng rng(112);
    DoubleComplex dc = one_row(rng);
    // any E_2 cocycle on a single row survives with its total class
    SpectralPage e2 = page(dc, 2);
    for (const auto& [pq, cell] : e2.cells) {
        if (cell.dim == 0)
            continue;
        ClassLift lift = class_map(dc, pq.first, pq.second, cell.reps[0]);
        CHECK(lift.survives);
        // the total representative projects back onto the input modulo B_2
        Subspace b2 = page_B(dc, 2, pq.first, pq.second);
        Vec lead(dc.dim(pq.first, pq.second), Scalar(0));
        std::size_t off = 0;
        for (const auto& c : dc.cells(pq.first + pq.second)) {
            if (c.p == pq.first && c.q == pq.second)
                off = c.offset;
        }
        for (std::size_t t = 0; t < lead.size(); ++t)
            lead[t] = lift.total_cocycle[off + t];
        Vec diff(lead.size());
        for (std::size_t t = 0; t < lead.size(); ++t)
            diff[t] = Q.sub(lead[t], cell.reps[0][t]);
        CHECK(b2.contains(diff));
        // a surviving nonzero E_inf class yields a nonzero total class
        bool nonzero_alpha = false;
        for (const auto& x : lift.alpha)
            nonzero_alpha = nonzero_alpha || x != 0;
        CHECK(nonzero_alpha);
        break;
    }

    // zero class survives with alpha = 0
    for (const auto& [pq, cell] : e2.cells) {
        Vec zero(dc.dim(pq.first, pq.second), Scalar(0));
        if (zero.empty())
            continue;
        ClassLift lift = class_map(dc, pq.first, pq.second, zero);
        CHECK(lift.survives);
        for (const auto& x : lift.alpha)
            CHECK(x == 0);
        break;
    }

    DoubleComplex fx = gen::dying_class_fixture(Q);
    ClassLift dying = class_map(fx, 0, 1, Vec{Scalar(1)});
    CHECK(!dying.survives);
    CHECK(dying.dies_at == 2);
    // the page-2 differential out of (0,1) is an isomorphism
    SpectralPage p2 = page(fx, 2);
    CHECK(p2.cells.at({0, 1}).dim == 1);
    CHECK(p2.cells.at({2, 0}).dim == 1);
    CHECK(rank(p2.d.at({0, 1})) == 1);
    // and everything is gone by E_3
    SpectralPage p3 = page(fx, 3);
    CHECK(p3.cells.at({0, 1}).dim == 0);
    CHECK(p3.cells.at({2, 0}).dim == 0);
    // a non-cocycle input is rejected
    CHECK_THROWS_AS(class_map(fx, 1, 0, Vec{Scalar(1)}), Error);
}

TEST_CASE("pages on random double complexes: towers, d_r^2, ker/im, abutment")
{
    Rng rng(113);
    for (int i = 0; i < 12; ++i) {
        Field f = gen::random_field(rng);
        DoubleComplex dc = gen::random_double_complex(f, rng, 2 + rng.below(2),
                                                      2 + rng.below(2), 2);
        CHECK(abutment_check(dc));
        SpectralPage prev = page(dc, 2);
        for (int r = 3; r <= 4; ++r) {
            SpectralPage cur = page(dc, r);
            for (const auto& [pq, cell] : cur.cells) {
                const PageCell& before = prev.cells.at(pq);
                CHECK(cell.dim <= before.dim);
                std::size_t rk_out = rank(prev.d.at(pq));
                auto in_it = prev.d.find({pq.first - (r - 1), pq.second + (r - 1) - 1});
                std::size_t rk_in = in_it == prev.d.end() ? 0 : rank(in_it->second);
                CHECK(cell.dim == before.dim - rk_out - rk_in);
            }
            prev = std::move(cur);
        }
        // stabilization: E at r_max equals E at r_max + 1
        int rmax = dc.stabilization_page();
        SpectralPage einf = page(dc, rmax);
        SpectralPage beyond = page(dc, rmax + 1);
        for (const auto& [pq, cell] : einf.cells)
            CHECK(cell.dim == beyond.cells.at(pq).dim);
    }
}

TEST_CASE("nonzero higher differentials are generated and square to zero")
{
    Rng rng(114);
    bool saw_nonzero_d2 = false;
    for (int i = 0; i < 30 && !saw_nonzero_d2; ++i) {
        DoubleComplex dc = gen::random_double_complex(Q, rng, 3, 2, 2);
        SpectralPage e2 = page(dc, 2);
        for (const auto& [pq, d] : e2.d)
            if (!d.is_zero())
                saw_nonzero_d2 = true;
    }
    CHECK(saw_nonzero_d2);
}
