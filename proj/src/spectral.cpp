#include "homcat/spectral.hpp"

#include <algorithm>

namespace homcat {

DoubleComplex::DoubleComplex(Field f, int p_lo, int q_lo,
                             std::vector<std::vector<std::size_t>> dims,
                             std::vector<std::vector<Matrix>> dh,
                             std::vector<std::vector<Matrix>> dv, bool check)
    : field_(f), p_lo_(p_lo), q_lo_(q_lo), dims_(std::move(dims)), dh_(std::move(dh)),
      dv_(std::move(dv))
{
    if (check)
        validate();
}

std::size_t DoubleComplex::dim(int p, int q) const
{
    int pi = p - p_lo_, qi = q - q_lo_;
    if (pi < 0 || pi >= static_cast<int>(dims_.size()))
        return 0;
    if (qi < 0 || qi >= static_cast<int>(dims_[static_cast<std::size_t>(pi)].size()))
        return 0;
    return dims_[static_cast<std::size_t>(pi)][static_cast<std::size_t>(qi)];
}

Matrix DoubleComplex::dh(int p, int q) const
{
    int pi = p - p_lo_, qi = q - q_lo_;
    if (pi >= 0 && pi < static_cast<int>(dh_.size()) && qi >= 0 &&
        qi < static_cast<int>(dh_[static_cast<std::size_t>(pi)].size()))
        return dh_[static_cast<std::size_t>(pi)][static_cast<std::size_t>(qi)];
    return Matrix::zero(field_, dim(p + 1, q), dim(p, q));
}

Matrix DoubleComplex::dv(int p, int q) const
{
    int pi = p - p_lo_, qi = q - q_lo_;
    if (pi >= 0 && pi < static_cast<int>(dv_.size()) && qi >= 0 &&
        qi < static_cast<int>(dv_[static_cast<std::size_t>(pi)].size()))
        return dv_[static_cast<std::size_t>(pi)][static_cast<std::size_t>(qi)];
    return Matrix::zero(field_, dim(p, q + 1), dim(p, q));
}

void DoubleComplex::validate() const
{
    for (int p = p_lo(); p <= p_hi(); ++p)
        for (int q = q_lo(); q <= q_hi(); ++q) {
            require(dh(p, q).rows() == dim(p + 1, q) && dh(p, q).cols() == dim(p, q),
                    Errc::shape_mismatch, "double complex: d_h shape mismatch");
            require(dv(p, q).rows() == dim(p, q + 1) && dv(p, q).cols() == dim(p, q),
                    Errc::shape_mismatch, "double complex: d_v shape mismatch");
            require((dh(p + 1, q) * dh(p, q)).is_zero(), Errc::invalid_argument,
                    "double complex: d_h^2 != 0");
            require((dv(p, q + 1) * dv(p, q)).is_zero(), Errc::invalid_argument,
                    "double complex: d_v^2 != 0");
            Matrix anti = dv(p + 1, q) * dh(p, q) + dh(p, q + 1) * dv(p, q);
            require(anti.is_zero(), Errc::invalid_argument,
                    "double complex: d_h d_v + d_v d_h != 0");
        }
}

std::vector<DoubleComplex::Cell> DoubleComplex::cells(int n) const
{
    std::vector<Cell> out;
    std::size_t off = 0;
    for (int p = p_lo(); p <= p_hi(); ++p) {
        int q = n - p;
        if (q < q_lo() || q > q_hi())
            continue;
        std::size_t d = dim(p, q);
        if (d == 0)
            continue;
        out.push_back(Cell{p, q, off, d});
        off += d;
    }
    return out;
}

std::size_t DoubleComplex::total_dim(int n) const
{
    std::size_t s = 0;
    for (const auto& c : cells(n))
        s += c.dim;
    return s;
}

Matrix DoubleComplex::total_d(int n) const
{
    auto src = cells(n);
    auto dst = cells(n + 1);
    Matrix D(field_, total_dim(n + 1), total_dim(n));
    for (const auto& s : src)
        for (const auto& t : dst) {
            Matrix blk(field_, 0, 0);
            if (t.p == s.p + 1 && t.q == s.q)
                blk = dh(s.p, s.q);
            else if (t.p == s.p && t.q == s.q + 1)
                blk = dv(s.p, s.q);
            else
                continue;
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j)
                    if (blk(i, j) != 0)
                        D.set(t.offset + i, s.offset + j, blk(i, j));
        }
    return D;
}

CochainComplex DoubleComplex::total() const
{
    int lo = p_lo() + q_lo();
    int hi = p_hi() + q_hi();
    if (hi < lo)
        return CochainComplex::zero(field_);
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int n = lo; n <= hi; ++n)
        dims.push_back(total_dim(n));
    for (int n = lo; n < hi; ++n)
        diffs.push_back(total_d(n));
    return CochainComplex(field_, lo, std::move(dims), std::move(diffs));
}

int DoubleComplex::stabilization_page() const
{
    int width = p_hi() - p_lo() + 1;
    int height = q_hi() - q_lo() + 1;
    return std::max(2, width + height + 1);
}

namespace {

// coordinate subspace F^p of Tot^n (columns with cell.p >= p)
Subspace filtration_space(const DoubleComplex& dc, int n, int p)
{
    auto cs = dc.cells(n);
    std::vector<Vec> rows;
    std::size_t N = dc.total_dim(n);
    for (const auto& c : cs) {
        if (c.p < p)
            continue;
        for (std::size_t i = 0; i < c.dim; ++i) {
            Vec v(N, Scalar(0));
            v[c.offset + i] = 1;
            rows.push_back(std::move(v));
        }
    }
    return Subspace::from_spanning(dc.field(), N, rows);
}

// projection Tot^n -> C^{p,q}
Matrix leading_projection(const DoubleComplex& dc, int n, int p, int q)
{
    Matrix pr(dc.field(), dc.dim(p, q), dc.total_dim(n));
    for (const auto& c : dc.cells(n))
        if (c.p == p && c.q == q)
            for (std::size_t i = 0; i < c.dim; ++i)
                pr.set(i, c.offset + i, Scalar(1));
    return pr;
}

// Z_r total space: {x in F^p Tot^n : (Dx)_j = 0 for all columns j < p+r},
// returned as a Subspace of Tot^n.
Subspace zigzag_space(const DoubleComplex& dc, int r, int n, int p)
{
    const std::size_t N = dc.total_dim(n);
    // unknowns: coordinates in cells with cell.p >= p
    auto cs = dc.cells(n);
    std::vector<std::size_t> unknown_cols;
    for (const auto& c : cs)
        if (c.p >= p)
            for (std::size_t i = 0; i < c.dim; ++i)
                unknown_cols.push_back(c.offset + i);
    if (unknown_cols.empty())
        return Subspace::zero(dc.field(), N);
    Matrix D = dc.total_d(n);
    // constraint rows: target cells with p <= cell.p < p+r
    std::vector<std::size_t> rows;
    for (const auto& t : dc.cells(n + 1))
        if (t.p >= p && t.p < p + r)
            for (std::size_t i = 0; i < t.dim; ++i)
                rows.push_back(t.offset + i);
    Matrix sys(dc.field(), rows.size(), unknown_cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < unknown_cols.size(); ++j)
            sys.set(i, j, D(rows[i], unknown_cols[j]));
    Subspace ker = kernel_basis(sys);
    std::vector<Vec> rows_out;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        Vec x(N, Scalar(0));
        for (std::size_t j = 0; j < unknown_cols.size(); ++j)
            x[unknown_cols[j]] = ker.basis()(k, j);
        rows_out.push_back(std::move(x));
    }
    return Subspace::from_spanning(dc.field(), N, rows_out);
}

} // namespace

Subspace page_Z(const DoubleComplex& dc, int r, int p, int q)
{
    const int n = p + q;
    Subspace tot = zigzag_space(dc, r, n, p);
    Matrix pr = leading_projection(dc, n, p, q);
    std::vector<Vec> rows;
    for (std::size_t k = 0; k < tot.dim(); ++k)
        rows.push_back(pr.apply(tot.basis().row(k)));
    return Subspace::from_spanning(dc.field(), dc.dim(p, q), rows);
}

Subspace page_B(const DoubleComplex& dc, int r, int p, int q)
{
    const int n = p + q;
    // boundaries D(F^{p-r+1} Tot^{n-1}) landing inside F^p, leading terms
    Subspace src = filtration_space(dc, n - 1, p - r + 1);
    Matrix D = dc.total_d(n - 1);
    std::vector<Vec> img;
    for (std::size_t k = 0; k < src.dim(); ++k)
        img.push_back(D.apply(src.basis().row(k)));
    Subspace W = Subspace::from_spanning(dc.field(), dc.total_dim(n), img);
    Subspace Fp = filtration_space(dc, n, p);
    Subspace inside = W.intersect(Fp);
    Matrix pr = leading_projection(dc, n, p, q);
    std::vector<Vec> rows;
    for (std::size_t k = 0; k < inside.dim(); ++k)
        rows.push_back(pr.apply(inside.basis().row(k)));
    return Subspace::from_spanning(dc.field(), dc.dim(p, q), rows);
}

namespace {

// canonical representatives of Z/B: sweep Z's RREF basis modulo B
std::vector<Vec> subquotient_reps(const Field& F, const Subspace& Z, const Subspace& B)
{
    std::vector<Vec> reps;
    Subspace span = B;
    for (std::size_t i = 0; i < Z.dim(); ++i) {
        Vec v = Z.basis().row(i);
        if (!span.contains(v)) {
            reps.push_back(v);
            span = span.sum(Subspace::from_spanning(F, Z.ambient_dim(), {v}));
        }
    }
    return reps;
}

// coordinates of z in reps modulo B
Vec subquotient_coordinates(const Field& F, const std::vector<Vec>& reps, const Subspace& B,
                            const Vec& z)
{
    if (reps.empty())
        return {};
    const std::size_t N = z.size();
    Matrix sys(F, N, reps.size() + B.dim());
    for (std::size_t j = 0; j < reps.size(); ++j)
        for (std::size_t i = 0; i < N; ++i)
            sys.set(i, j, reps[j][i]);
    for (std::size_t j = 0; j < B.dim(); ++j)
        for (std::size_t i = 0; i < N; ++i)
            sys.set(i, reps.size() + j, B.basis()(j, i));
    auto sol = solve(sys, z);
    require(sol.has_value(), Errc::internal, "subquotient coordinates: not in span");
    return Vec(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(reps.size()));
}

// canonical total zigzag with leading term x_pq = a (must lie in page_Z(r));
// returns the total vector in Tot^{p+q} coordinates
Vec total_zigzag(const DoubleComplex& dc, int r, int p, int q, const Vec& a)
{
    const int n = p + q;
    const std::size_t N = dc.total_dim(n);
    auto cs = dc.cells(n);
    std::vector<std::size_t> unknown_cols;
    for (const auto& c : cs)
        if (c.p >= p)
            for (std::size_t i = 0; i < c.dim; ++i)
                unknown_cols.push_back(c.offset + i);
    Matrix D = dc.total_d(n);
    std::vector<std::size_t> rows;
    for (const auto& t : dc.cells(n + 1))
        if (t.p >= p && t.p < p + r)
            for (std::size_t i = 0; i < t.dim; ++i)
                rows.push_back(t.offset + i);
    // equations: constraint rows of D x = 0 and leading term = a
    Matrix pr = leading_projection(dc, n, p, q);
    Matrix sys(dc.field(), rows.size() + dc.dim(p, q), unknown_cols.size());
    Vec rhs(rows.size() + dc.dim(p, q), Scalar(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < unknown_cols.size(); ++j)
            sys.set(i, j, D(rows[i], unknown_cols[j]));
    for (std::size_t i = 0; i < dc.dim(p, q); ++i) {
        for (std::size_t j = 0; j < unknown_cols.size(); ++j)
            sys.set(rows.size() + i, j, pr(i, unknown_cols[j]));
        rhs[rows.size() + i] = a[i];
    }
    auto sol = solve(sys, rhs);
    require(sol.has_value(), Errc::internal, "zigzag lift: system inconsistent");
    Vec x(N, Scalar(0));
    for (std::size_t j = 0; j < unknown_cols.size(); ++j)
        x[unknown_cols[j]] = (*sol)[j];
    return x;
}

} // namespace

SpectralPage page(const DoubleComplex& dc, int r)
{
    SpectralPage pg;
    pg.r = r;
    const Field& F = dc.field();
    for (int p = dc.p_lo(); p <= dc.p_hi(); ++p)
        for (int q = dc.q_lo(); q <= dc.q_hi(); ++q) {
            PageCell cell;
            cell.Z = page_Z(dc, r, p, q);
            cell.B = page_B(dc, r, p, q);
            require(cell.Z.sum(cell.B) == cell.Z, Errc::internal, "page: B not inside Z");
            cell.dim = cell.Z.dim() - cell.B.dim();
            cell.reps = subquotient_reps(F, cell.Z, cell.B);
            pg.cells.emplace(std::make_pair(p, q), std::move(cell));
        }
    // d_r between page bases
    for (int p = dc.p_lo(); p <= dc.p_hi(); ++p)
        for (int q = dc.q_lo(); q <= dc.q_hi(); ++q) {
            const PageCell& src = pg.cells.at({p, q});
            auto it = pg.cells.find({p + r, q - r + 1});
            std::size_t tdim = it == pg.cells.end() ? 0 : it->second.dim;
            Matrix d(F, tdim, src.dim);
            if (tdim != 0 && src.dim != 0) {
                const PageCell& dst = it->second;
                const int n = p + q;
                Matrix D = dc.total_d(n);
                Matrix pr = leading_projection(dc, n + 1, p + r, q - r + 1);
                for (std::size_t j = 0; j < src.dim; ++j) {
                    Vec x = total_zigzag(dc, r, p, q, src.reps[j]);
                    Vec y = pr.apply(D.apply(x));
                    Vec coords = subquotient_coordinates(F, dst.reps, dst.B, y);
                    for (std::size_t i = 0; i < tdim; ++i)
                        d.set(i, j, coords[i]);
                }
            }
            pg.d.emplace(std::make_pair(p, q), std::move(d));
        }
    return pg;
}

std::vector<SpectralPage> pages(const DoubleComplex& dc, int up_to)
{
    std::vector<SpectralPage> out;
    for (int r = 2; r <= up_to; ++r)
        out.push_back(page(dc, r));
    return out;
}

std::vector<std::pair<int, std::size_t>> total_cohomology_dims(const DoubleComplex& dc)
{
    CochainComplex tot = dc.total();
    std::vector<std::pair<int, std::size_t>> out;
    for (int n = tot.lo(); n <= tot.hi(); ++n)
        out.emplace_back(n, tot.cohomology(n).dim);
    return out;
}

bool abutment_check(const DoubleComplex& dc)
{
    const int rinf = dc.stabilization_page();
    SpectralPage einf = page(dc, rinf);
    CochainComplex tot = dc.total();
    for (int n = dc.p_lo() + dc.q_lo(); n <= dc.p_hi() + dc.q_hi(); ++n) {
        std::size_t s = 0;
        for (int p = dc.p_lo(); p <= dc.p_hi(); ++p) {
            auto it = einf.cells.find({p, n - p});
            if (it != einf.cells.end())
                s += it->second.dim;
        }
        if (s != tot.cohomology(n).dim)
            return false;
    }
    return true;
}

ClassLift class_map(const DoubleComplex& dc, int p, int q, const Vec& a)
{
    require(a.size() == dc.dim(p, q), Errc::shape_mismatch, "class_map: bad vector length");
    Subspace Z2 = page_Z(dc, 2, p, q);
    require(Z2.contains(a), Errc::not_a_cocycle, "class_map: not an E_2 cocycle");
    Subspace B2 = page_B(dc, 2, p, q);
    const int rinf = dc.stabilization_page();
    ClassLift out;
    for (int r = 3; r <= rinf; ++r) {
        Subspace Zr = page_Z(dc, r, p, q);
        if (!Zr.sum(B2).contains(a)) {
            out.survives = false;
            out.dies_at = r - 1; // obstructed by d_{r-1}
            return out;
        }
    }
    // survives: canonical fully-closed zigzag for a - b with b in B2
    const int n = p + q;
    const std::size_t N = dc.total_dim(n);
    auto cs = dc.cells(n);
    std::vector<std::size_t> unknown_cols;
    for (const auto& c : cs)
        if (c.p >= p)
            for (std::size_t i = 0; i < c.dim; ++i)
                unknown_cols.push_back(c.offset + i);
    Matrix D = dc.total_d(n);
    Matrix pr = leading_projection(dc, n, p, q);
    const std::size_t nb = B2.dim();
    // unknowns: x (filtration coords) and coefficients of b over B2's basis
    Matrix sys(dc.field(), D.rows() + dc.dim(p, q), unknown_cols.size() + nb);
    Vec rhs(D.rows() + dc.dim(p, q), Scalar(0));
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < unknown_cols.size(); ++j)
            sys.set(i, j, D(i, unknown_cols[j]));
    for (std::size_t i = 0; i < dc.dim(p, q); ++i) {
        for (std::size_t j = 0; j < unknown_cols.size(); ++j)
            sys.set(D.rows() + i, j, pr(i, unknown_cols[j]));
        for (std::size_t j = 0; j < nb; ++j)
            sys.set(D.rows() + i, unknown_cols.size() + j, B2.basis()(j, i));
        rhs[D.rows() + i] = a[i];
    }
    auto sol = solve(sys, rhs);
    require(sol.has_value(), Errc::internal, "class_map: survival lift failed");
    Vec x(N, Scalar(0));
    for (std::size_t j = 0; j < unknown_cols.size(); ++j)
        x[unknown_cols[j]] = (*sol)[j];
    out.survives = true;
    out.total_cocycle = x;
    CochainComplex tot = dc.total();
    out.alpha = tot.class_coordinates(n, x);
    return out;
}

} // namespace homcat
