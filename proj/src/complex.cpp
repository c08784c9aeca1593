#include "homcat/complex.hpp"

#include <algorithm>

namespace homcat {

CochainComplex::CochainComplex(Field f, int lo, std::vector<std::size_t> dims,
                               std::vector<Matrix> diffs, bool check)
    : field_(f), lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs))
{
    if (check)
        validate();
}

CochainComplex CochainComplex::one_term(Field f, int degree, std::size_t dim)
{
    return CochainComplex(f, degree, {dim}, {});
}

CochainComplex CochainComplex::two_term(Field f, int degree, const Matrix& d)
{
    return CochainComplex(f, degree, {d.cols(), d.rows()}, {d});
}

std::size_t CochainComplex::dim(int n) const
{
    int i = n - lo_;
    if (i < 0 || i >= static_cast<int>(dims_.size()))
        return 0;
    return dims_[static_cast<std::size_t>(i)];
}

Matrix CochainComplex::d(int n) const
{
    int i = n - lo_;
    if (i >= 0 && i + 1 < static_cast<int>(dims_.size()))
        return diffs_[static_cast<std::size_t>(i)];
    return Matrix::zero(field_, dim(n + 1), dim(n));
}

void CochainComplex::validate() const
{
    require(diffs_.size() == (dims_.size() > 0 ? dims_.size() - 1 : 0), Errc::shape_mismatch,
            "complex: need exactly one differential per adjacent pair of degrees");
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
        require(diffs_[i].field() == field_, Errc::field_mismatch, "complex: field mismatch");
        require(diffs_[i].rows() == dims_[i + 1] && diffs_[i].cols() == dims_[i],
                Errc::shape_mismatch, "complex: differential shape mismatch");
    }
    require(dd_is_zero(), Errc::invalid_argument, "complex: d o d != 0");
}

bool CochainComplex::dd_is_zero() const
{
    for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
        if (!(diffs_[i + 1] * diffs_[i]).is_zero())
            return false;
    return true;
}

Cohomology CochainComplex::cohomology(int n) const
{
    Cohomology h;
    if (dim(n) == 0)
        return h;
    Subspace ker = kernel_basis(d(n));
    Subspace img = image_space(d(n - 1));
    h.dim = ker.dim() - img.dim();
    // canonical representatives: sweep the RREF kernel basis, keep vectors
    // independent modulo the coboundaries
    Subspace span = img;
    for (std::size_t i = 0; i < ker.dim() && h.reps.size() < h.dim; ++i) {
        Vec v = ker.basis().row(i);
        if (!span.contains(v)) {
            h.reps.push_back(v);
            std::vector<Vec> rows = {v};
            span = span.sum(Subspace::from_spanning(field_, dim(n), rows));
        }
    }
    require(h.reps.size() == h.dim, Errc::internal, "cohomology representative count mismatch");
    return h;
}

std::vector<std::size_t> CochainComplex::cohomology_dims() const
{
    std::vector<std::size_t> out;
    for (int n = lo(); n <= hi(); ++n)
        out.push_back(cohomology(n).dim);
    return out;
}

long CochainComplex::euler_characteristic() const
{
    long chi = 0;
    for (int n = lo(); n <= hi(); ++n)
        chi += (((n % 2) + 2) % 2 == 0 ? 1 : -1) * static_cast<long>(dim(n));
    return chi;
}

Vec CochainComplex::class_coordinates(int n, const Vec& z) const
{
    require(z.size() == dim(n), Errc::shape_mismatch, "class_coordinates: bad vector length");
    require(d(n).apply(z) == Vec(dim(n + 1), Scalar(0)), Errc::not_a_cocycle,
            "class_coordinates: not a cocycle");
    Cohomology h = cohomology(n);
    if (h.dim == 0)
        return {};
    // z = sum a_i rep_i + d(w): solve [reps | d] (a, w)^T = z
    Matrix reps(field_, dim(n), h.dim);
    for (std::size_t j = 0; j < h.dim; ++j)
        for (std::size_t i = 0; i < dim(n); ++i)
            reps.set(i, j, h.reps[j][i]);
    Matrix sys = reps.hcat(d(n - 1));
    auto sol = solve(sys, z);
    require(sol.has_value(), Errc::internal, "cocycle not spanned by representatives");
    return Vec(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(h.dim));
}

bool equal_as_based_complexes(const CochainComplex& a, const CochainComplex& b)
{
    if (a.field() != b.field())
        return false;
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    for (int n = lo; n <= hi; ++n) {
        if (a.dim(n) != b.dim(n))
            return false;
        if (a.d(n) != b.d(n))
            return false;
    }
    return true;
}

CochainComplex shift(const CochainComplex& c, int k)
{
    if (c.empty_support())
        return c;
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int n = c.lo(); n <= c.hi(); ++n)
        dims.push_back(c.dim(n));
    const Scalar sgn = (((k % 2) + 2) % 2 == 0) ? Scalar(1) : Scalar(-1);
    for (int n = c.lo(); n < c.hi(); ++n)
        diffs.push_back(c.d(n).scaled(sgn));
    return CochainComplex(c.field(), c.lo() - k, std::move(dims), std::move(diffs));
}

Matrix ChainMap::at(int n) const
{
    int i = n - lo;
    if (i >= 0 && i < static_cast<int>(comps.size()))
        return comps[static_cast<std::size_t>(i)];
    return Matrix::zero(src.field(), dst.dim(n), src.dim(n));
}

void ChainMap::validate() const
{
    require(src.field() == dst.field(), Errc::field_mismatch, "chain map: field mismatch");
    for (int n = lo; n < lo + static_cast<int>(comps.size()); ++n) {
        const Matrix& m = comps[static_cast<std::size_t>(n - lo)];
        require(m.rows() == dst.dim(n) && m.cols() == src.dim(n), Errc::shape_mismatch,
                "chain map: component shape mismatch at degree " + std::to_string(n));
    }
    require(commutes(), Errc::not_a_morphism, "chain map does not commute with differentials");
}

bool ChainMap::commutes() const
{
    int lo_n = std::min(src.lo(), dst.lo()) - 1;
    int hi_n = std::max(src.hi(), dst.hi()) + 1;
    for (int n = lo_n; n <= hi_n; ++n)
        if (dst.d(n) * at(n) != at(n + 1) * src.d(n))
            return false;
    return true;
}

ChainMap ChainMap::make(const CochainComplex& src, const CochainComplex& dst, int lo,
                        std::vector<Matrix> comps, bool check)
{
    ChainMap f{src, dst, lo, std::move(comps)};
    if (check)
        f.validate();
    return f;
}

ChainMap ChainMap::identity(const CochainComplex& c)
{
    return scalar_map(c, Scalar(1));
}

ChainMap ChainMap::scalar_map(const CochainComplex& c, const Scalar& s)
{
    std::vector<Matrix> comps;
    for (int n = c.lo(); n <= c.hi(); ++n)
        comps.push_back(Matrix::scalar(c.field(), c.dim(n), s));
    return make(c, c, c.lo(), std::move(comps), false);
}

ChainMap ChainMap::zero(const CochainComplex& src, const CochainComplex& dst)
{
    return make(src, dst, 0, {}, false);
}

ChainMap ChainMap::compose_after(const ChainMap& first) const
{
    int lo_n = std::min(first.src.lo(), src.lo());
    int hi_n = std::max(first.src.hi(), src.hi());
    std::vector<Matrix> comps;
    for (int n = lo_n; n <= hi_n; ++n)
        comps.push_back(at(n) * first.at(n));
    return make(first.src, dst, lo_n, std::move(comps), false);
}

Matrix ChainMap::induced_on_cohomology(int n) const
{
    Cohomology hs = src.cohomology(n);
    Cohomology hd = dst.cohomology(n);
    Matrix r(src.field(), hd.dim, hs.dim);
    for (std::size_t j = 0; j < hs.dim; ++j) {
        Vec img = at(n).apply(hs.reps[j]);
        Vec coords = dst.class_coordinates(n, img);
        for (std::size_t i = 0; i < hd.dim; ++i)
            r.set(i, j, coords[i]);
    }
    return r;
}

CochainComplex cone(const ChainMap& f)
{
    const CochainComplex& K = f.src;
    const CochainComplex& L = f.dst;
    const Field& F = K.field();
    int lo = std::min(K.lo() - 1, L.lo());
    int hi = std::max(K.hi() - 1, L.hi());
    if (hi < lo)
        return CochainComplex::zero(F);
    std::vector<std::size_t> dims;
    for (int m = lo; m <= hi; ++m)
        dims.push_back(K.dim(m + 1) + L.dim(m));
    std::vector<Matrix> diffs;
    for (int m = lo; m < hi; ++m) {
        BlockBuilder b(F, {K.dim(m + 2), L.dim(m + 1)}, {K.dim(m + 1), L.dim(m)});
        b.place(0, 0, -K.d(m + 1));
        b.place(1, 0, -f.at(m + 1));
        b.place(1, 1, L.d(m));
        diffs.push_back(b.result());
    }
    return CochainComplex(F, lo, std::move(dims), std::move(diffs));
}

CylinderData cylinder(const ChainMap& f)
{
    const CochainComplex& B = f.src;
    const CochainComplex& A = f.dst;
    const Field& F = B.field();
    int lo = std::min(B.lo() - 1, A.lo());
    int hi = std::max(B.hi(), A.hi());
    std::vector<std::size_t> dims;
    for (int m = lo; m <= hi; ++m)
        dims.push_back(B.dim(m) + B.dim(m + 1) + A.dim(m));
    std::vector<Matrix> diffs;
    for (int m = lo; m < hi; ++m) {
        BlockBuilder b(F, {B.dim(m + 1), B.dim(m + 2), A.dim(m + 1)},
                       {B.dim(m), B.dim(m + 1), A.dim(m)});
        b.place(0, 0, B.d(m));
        b.place(0, 1, -Matrix::identity(F, B.dim(m + 1)));
        b.place(1, 1, -B.d(m + 1));
        b.place(2, 1, -f.at(m + 1));
        b.place(2, 2, A.d(m));
        diffs.push_back(b.result());
    }
    CochainComplex cyl(F, lo, std::move(dims), std::move(diffs));

    std::vector<Matrix> inc;
    for (int m = lo; m <= hi; ++m) {
        BlockBuilder b(F, {B.dim(m), B.dim(m + 1), A.dim(m)}, {B.dim(m)});
        b.place(0, 0, Matrix::identity(F, B.dim(m)));
        inc.push_back(b.result());
    }
    ChainMap include_src = ChainMap::make(B, cyl, lo, std::move(inc));

    CochainComplex con = cone(f);
    std::vector<Matrix> prj;
    for (int m = lo; m <= hi; ++m) {
        BlockBuilder b(F, {B.dim(m + 1), A.dim(m)}, {B.dim(m), B.dim(m + 1), A.dim(m)});
        b.place(0, 1, Matrix::identity(F, B.dim(m + 1)));
        b.place(1, 2, Matrix::identity(F, A.dim(m)));
        prj.push_back(b.result());
    }
    ChainMap project_cone = ChainMap::make(cyl, con, lo, std::move(prj));
    return CylinderData{std::move(cyl), std::move(include_src), std::move(project_cone)};
}

void ShortExactSeq::validate() const
{
    inc.validate();
    proj.validate();
    require(equal_as_based_complexes(inc.dst, proj.src), Errc::shape_mismatch,
            "SES: middle complexes differ");
    int lo = std::min(inc.src.lo(), std::min(inc.dst.lo(), proj.dst.lo()));
    int hi = std::max(inc.src.hi(), std::max(inc.dst.hi(), proj.dst.hi()));
    for (int n = lo; n <= hi; ++n) {
        std::size_t b = inc.src.dim(n), c = inc.dst.dim(n), d = proj.dst.dim(n);
        bool ok = (b + d == c) && rank(inc.at(n)) == b && rank(proj.at(n)) == d &&
                  (proj.at(n) * inc.at(n)).is_zero();
        require(ok, Errc::not_exact,
                "SES: sequence is not degreewise exact at degree " + std::to_string(n));
    }
}

std::map<int, Matrix> connecting(const ShortExactSeq& ses)
{
    ses.validate();
    const CochainComplex& B = ses.inc.src;
    const CochainComplex& C = ses.inc.dst;
    const CochainComplex& D = ses.proj.dst;
    std::map<int, Matrix> out;
    int lo = std::min(B.lo(), std::min(C.lo(), D.lo())) - 1;
    int hi = std::max(B.hi(), std::max(C.hi(), D.hi()));
    for (int n = lo; n <= hi; ++n) {
        Cohomology hd = D.cohomology(n);
        Cohomology hb = B.cohomology(n + 1);
        Matrix m(B.field(), hb.dim, hd.dim);
        for (std::size_t j = 0; j < hd.dim; ++j) {
            // lift along proj, differentiate, pull back along inc
            auto c = solve(ses.proj.at(n), hd.reps[j]);
            require(c.has_value(), Errc::internal, "connecting: lift failed");
            Vec dc = C.d(n).apply(*c);
            auto b = solve(ses.inc.at(n + 1), dc);
            require(b.has_value(), Errc::internal, "connecting: pullback failed");
            Vec coords = B.class_coordinates(n + 1, *b);
            for (std::size_t i = 0; i < hb.dim; ++i)
                m.set(i, j, coords[i]);
        }
        out.emplace(n, std::move(m));
    }
    return out;
}

bool exactness_check(const std::vector<Matrix>& maps)
{
    for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
        require(maps[i + 1].cols() == maps[i].rows(), Errc::shape_mismatch,
                "exactness_check: maps are not composable");
        if (!(maps[i + 1] * maps[i]).is_zero())
            return false;
        if (rank(maps[i]) + rank(maps[i + 1]) != maps[i].rows())
            return false; // im != ker at the interior node
    }
    return true;
}

LongExactSequence les_of_ses(const ShortExactSeq& ses)
{
    const CochainComplex& B = ses.inc.src;
    const CochainComplex& C = ses.inc.dst;
    const CochainComplex& D = ses.proj.dst;
    std::map<int, Matrix> delta = connecting(ses);

    LongExactSequence les;
    int lo = std::min(B.lo(), std::min(C.lo(), D.lo()));
    int hi = std::max(B.hi(), std::max(C.hi(), D.hi()));
    std::vector<Matrix> maps;
    // 0 -> H^lo(B) -> H^lo(C) -> H^lo(D) -> H^{lo+1}(B) -> ...
    std::size_t first = B.cohomology(lo).dim;
    maps.push_back(Matrix::zero(B.field(), first, 0));
    les.dims.push_back(0);
    les.labels.push_back("0");
    for (int n = lo; n <= hi; ++n) {
        les.dims.push_back(B.cohomology(n).dim);
        les.labels.push_back("H^" + std::to_string(n) + "(B)");
        maps.push_back(ses.inc.induced_on_cohomology(n));
        les.dims.push_back(C.cohomology(n).dim);
        les.labels.push_back("H^" + std::to_string(n) + "(C)");
        maps.push_back(ses.proj.induced_on_cohomology(n));
        les.dims.push_back(D.cohomology(n).dim);
        les.labels.push_back("H^" + std::to_string(n) + "(D)");
        if (n < hi)
            maps.push_back(delta.at(n));
    }
    std::size_t last = D.cohomology(hi).dim;
    maps.push_back(Matrix::zero(B.field(), 0, last));
    les.dims.push_back(0);
    les.labels.push_back("0");
    les.maps = std::move(maps);
    les.exact = exactness_check(les.maps);
    return les;
}

} // namespace homcat
