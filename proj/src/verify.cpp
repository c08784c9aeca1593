#include "homcat/verify.hpp"

#include <algorithm>

#include "homcat/homcx.hpp"

namespace homcat {

namespace gen {

Field random_field(Rng& rng)
{
    switch (rng.below(4)) {
        case 0: return Field::rationals();
        case 1: return Field::prime_field(2);
        case 2: return Field::prime_field(3);
        default: return Field::prime_field(5);
    }
}

Scalar random_scalar(const Field& f, Rng& rng, long span)
{
    if (f.is_rationals())
        return Scalar(rng.range(-span, span));
    return f.reduce(Scalar(static_cast<long>(rng.below(f.characteristic()))));
}

Matrix random_matrix(const Field& f, Rng& rng, std::size_t rows, std::size_t cols, long span)
{
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, random_scalar(f, rng, span));
    return m;
}

Matrix random_invertible(const Field& f, Rng& rng, std::size_t n)
{
    Matrix u = Matrix::identity(f, n);
    const std::size_t ops = 2 * n + 2;
    for (std::size_t k = 0; k < ops && n >= 2; ++k) {
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j)
            continue;
        // row_i += c * row_j
        Scalar c = random_scalar(f, rng, 1);
        Matrix e = Matrix::identity(f, n);
        e.set(i, j, c);
        u = e * u;
    }
    return u;
}

CochainComplex random_complex(const Field& f, Rng& rng, int lo, int len, std::size_t max_dim)
{
    // canonical model: dims_i = h_i + r_{i-1} + r_i with identity blocks,
    // conjugated by random invertible matrices
    std::vector<std::size_t> h(static_cast<std::size_t>(len)), r(static_cast<std::size_t>(len), 0);
    for (int i = 0; i < len; ++i)
        h[static_cast<std::size_t>(i)] = rng.below(max_dim + 1);
    for (int i = 0; i + 1 < len; ++i)
        r[static_cast<std::size_t>(i)] = rng.below(max_dim + 1); // rank of d_i
    auto dim_at = [&](int i) -> std::size_t {
        std::size_t prev = (i > 0) ? r[static_cast<std::size_t>(i - 1)] : 0;
        std::size_t cur = (i < len) ? r[static_cast<std::size_t>(i)] : 0;
        return (i >= 0 && i < len) ? h[static_cast<std::size_t>(i)] + prev + cur : 0;
    };
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    std::vector<Matrix> u;
    for (int i = 0; i < len; ++i) {
        dims.push_back(dim_at(i));
        u.push_back(random_invertible(f, rng, dim_at(i)));
    }
    for (int i = 0; i + 1 < len; ++i) {
        // canonical d: source block [h_i | r_{i-1} | r_i] -> target block
        // [h_{i+1} | r_i | r_{i+1}], identity from the r_i part to the r_i part
        Matrix d(f, dim_at(i + 1), dim_at(i));
        std::size_t src_off = h[static_cast<std::size_t>(i)] +
                              ((i > 0) ? r[static_cast<std::size_t>(i - 1)] : 0);
        std::size_t dst_off = h[static_cast<std::size_t>(i + 1)];
        for (std::size_t t = 0; t < r[static_cast<std::size_t>(i)]; ++t)
            d.set(dst_off + t, src_off + t, Scalar(1));
        auto uinv = inverse(u[static_cast<std::size_t>(i)]);
        diffs.push_back(u[static_cast<std::size_t>(i + 1)] * d * (*uinv));
    }
    return CochainComplex(f, lo, std::move(dims), std::move(diffs));
}

std::vector<ChainMap> chain_map_space(const CochainComplex& src, const CochainComplex& dst)
{
    const Field& f = src.field();
    int lo = std::min(src.lo(), dst.lo());
    int hi = std::max(src.hi(), dst.hi());
    // unknowns: entries of f_n (dst.dim(n) x src.dim(n)) col-major per degree
    std::vector<std::size_t> offs;
    std::size_t total = 0;
    for (int n = lo; n <= hi; ++n) {
        offs.push_back(total);
        total += dst.dim(n) * src.dim(n);
    }
    std::size_t rows = 0;
    for (int n = lo; n <= hi; ++n)
        rows += dst.dim(n + 1) * src.dim(n);
    Matrix sys(f, rows, total);
    std::size_t row0 = 0;
    for (int n = lo; n <= hi; ++n) {
        // d_dst f_n - f_{n+1} d_src = 0
        Matrix a = kron(Matrix::identity(f, src.dim(n)), dst.d(n));
        const std::size_t nr = dst.dim(n + 1) * src.dim(n);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a(i, j) != 0)
                    sys.set(row0 + i, offs[static_cast<std::size_t>(n - lo)] + j, a(i, j));
        if (n + 1 <= hi) {
            Matrix b = kron(src.d(n).transpose(), Matrix::identity(f, dst.dim(n + 1)));
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (b(i, j) != 0)
                        sys.set(row0 + i, offs[static_cast<std::size_t>(n + 1 - lo)] + j,
                                f.neg(b(i, j)));
        }
        row0 += nr;
    }
    Subspace ker = kernel_basis(sys);
    std::vector<ChainMap> basis;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        std::vector<Matrix> comps;
        for (int n = lo; n <= hi; ++n) {
            Matrix m(f, dst.dim(n), src.dim(n));
            for (std::size_t j = 0; j < src.dim(n); ++j)
                for (std::size_t i = 0; i < dst.dim(n); ++i)
                    m.set(i, j,
                          ker.basis()(k, offs[static_cast<std::size_t>(n - lo)] + j * dst.dim(n) +
                                             i));
            comps.push_back(std::move(m));
        }
        basis.push_back(ChainMap::make(src, dst, lo, std::move(comps), false));
    }
    return basis;
}

ChainMap random_chain_map(const CochainComplex& src, const CochainComplex& dst, Rng& rng)
{
    std::vector<ChainMap> basis = chain_map_space(src, dst);
    ChainMap f = ChainMap::zero(src, dst);
    if (basis.empty())
        return f;
    int lo = basis.front().lo;
    std::vector<Matrix> comps;
    for (std::size_t c = 0; c < basis.front().comps.size(); ++c)
        comps.push_back(Matrix::zero(src.field(), basis.front().comps[c].rows(),
                                     basis.front().comps[c].cols()));
    for (const auto& b : basis) {
        Scalar coef = random_scalar(src.field(), rng, 1);
        if (coef == 0)
            continue;
        for (std::size_t c = 0; c < comps.size(); ++c)
            comps[c] = comps[c] + b.comps[c].scaled(coef);
    }
    return ChainMap::make(src, dst, lo, std::move(comps));
}

AlgebraPtr random_algebra(const Field& f, Rng& rng)
{
    switch (rng.below(4)) {
        case 0: return FinDimAlgebra::field_algebra(f);
        case 1: return FinDimAlgebra::dual_numbers(f);
        case 2: return FinDimAlgebra::truncated_polynomials(f, 3);
        default: return FinDimAlgebra::product_of_points(f, 2);
    }
}

AModule random_module(const AlgebraPtr& alg, Rng& rng, std::size_t max_rank)
{
    std::size_t r = 1 + rng.below(max_rank);
    AModule free = AModule::free_module(alg, r);
    if (rng.below(3) == 0)
        return free;
    // quotient by a random submodule
    std::vector<Vec> gens;
    std::size_t count = 1 + rng.below(2);
    for (std::size_t t = 0; t < count; ++t) {
        Vec v(free.dim());
        for (auto& x : v)
            x = random_scalar(alg->field(), rng, 1);
        gens.push_back(std::move(v));
    }
    Subspace s = module_closure(free, gens);
    if (s.dim() == free.dim())
        return free; // quotient would be zero; keep the free module
    return quotient_module_of(free, s).mod;
}

Extension1 random_ses(const AlgebraPtr& alg, Rng& rng)
{
    for (int attempt = 0; attempt < 8; ++attempt) {
        AModule c = random_module(alg, rng);
        if (c.dim() == 0)
            continue;
        Vec v(c.dim());
        for (auto& x : v)
            x = random_scalar(alg->field(), rng, 1);
        Subspace s = module_closure(c, {v});
        if (s.dim() == 0 || s.dim() == c.dim())
            continue;
        SubmoduleData sub = submodule(c, s);
        QuotientData quo = quotient_module_of(c, s);
        return Extension1{sub.mod, c, quo.mod, sub.incl, quo.proj};
    }
    AModule g = random_module(alg, rng), f = random_module(alg, rng);
    return split_extension(g, f);
}

DoubleComplex random_double_complex(const Field& f, Rng& rng, int width, int height,
                                    std::size_t max_dim)
{
    // columns are random complexes; horizontal maps are chain maps into the
    // sign-flipped next column with d_h^2 = 0, solved sequentially
    std::vector<CochainComplex> cols;
    for (int p = 0; p < width; ++p)
        cols.push_back(random_complex(f, rng, 0, height, max_dim));
    auto negated = [&](const CochainComplex& c) {
        std::vector<std::size_t> dims;
        std::vector<Matrix> diffs;
        for (int n = c.lo(); n <= c.hi(); ++n)
            dims.push_back(c.dim(n));
        for (int n = c.lo(); n < c.hi(); ++n)
            diffs.push_back(-c.d(n));
        return CochainComplex(f, c.lo(), std::move(dims), std::move(diffs));
    };
    std::vector<ChainMap> hmaps;
    for (int p = 0; p + 1 < width; ++p) {
        CochainComplex tgt = negated(cols[static_cast<std::size_t>(p + 1)]);
        std::vector<ChainMap> space = chain_map_space(cols[static_cast<std::size_t>(p)], tgt);
        // impose f_{p} with previous composite zero
        std::vector<ChainMap> ok;
        if (p == 0) {
            ok = space;
        } else {
            // keep the subspace with candidate o previous = 0 degreewise;
            // solve for coefficient combinations
            const ChainMap& prev = hmaps.back();
            std::size_t rows = 0;
            for (int n = 0; n < height; ++n)
                rows += tgt.dim(n) * prev.src.dim(n);
            Matrix sys(f, rows, space.size());
            for (std::size_t k = 0; k < space.size(); ++k) {
                std::size_t row0 = 0;
                for (int n = 0; n < height; ++n) {
                    Matrix comp = space[k].at(n) * prev.at(n);
                    for (std::size_t i = 0; i < comp.rows(); ++i)
                        for (std::size_t j = 0; j < comp.cols(); ++j)
                            sys.set(row0 + i * comp.cols() + j, k, comp(i, j));
                    row0 += comp.rows() * comp.cols();
                }
            }
            Subspace kerc = kernel_basis(sys);
            for (std::size_t k = 0; k < kerc.dim(); ++k) {
                ChainMap combo = ChainMap::zero(cols[static_cast<std::size_t>(p)], tgt);
                std::vector<Matrix> comps;
                for (int n = 0; n < height; ++n)
                    comps.push_back(Matrix::zero(f, tgt.dim(n),
                                                 cols[static_cast<std::size_t>(p)].dim(n)));
                for (std::size_t t = 0; t < space.size(); ++t) {
                    const Scalar& c2 = kerc.basis()(k, t);
                    if (c2 == 0)
                        continue;
                    for (int n = 0; n < height; ++n)
                        comps[static_cast<std::size_t>(n)] =
                            comps[static_cast<std::size_t>(n)] +
                            space[t].at(n).scaled(c2);
                }
                combo = ChainMap::make(cols[static_cast<std::size_t>(p)], tgt, 0,
                                       std::move(comps), false);
                ok.push_back(std::move(combo));
            }
        }
        // random combination
        std::vector<Matrix> comps;
        for (int n = 0; n < height; ++n)
            comps.push_back(
                Matrix::zero(f, tgt.dim(n), cols[static_cast<std::size_t>(p)].dim(n)));
        for (const auto& b : ok) {
            Scalar coef = random_scalar(f, rng, 1);
            if (coef == 0)
                continue;
            for (int n = 0; n < height; ++n)
                comps[static_cast<std::size_t>(n)] =
                    comps[static_cast<std::size_t>(n)] + b.at(n).scaled(coef);
        }
        hmaps.push_back(ChainMap::make(cols[static_cast<std::size_t>(p)], tgt, 0,
                                       std::move(comps), false));
    }
    std::vector<std::vector<std::size_t>> dims(static_cast<std::size_t>(width));
    std::vector<std::vector<Matrix>> dh(static_cast<std::size_t>(width)),
        dv(static_cast<std::size_t>(width));
    for (int p = 0; p < width; ++p)
        for (int q = 0; q < height; ++q) {
            dims[static_cast<std::size_t>(p)].push_back(
                cols[static_cast<std::size_t>(p)].dim(q));
            dv[static_cast<std::size_t>(p)].push_back(cols[static_cast<std::size_t>(p)].d(q));
            if (p + 1 < width)
                dh[static_cast<std::size_t>(p)].push_back(hmaps[static_cast<std::size_t>(p)].at(q));
            else
                dh[static_cast<std::size_t>(p)].push_back(
                    Matrix::zero(f, 0, cols[static_cast<std::size_t>(p)].dim(q)));
        }
    return DoubleComplex(f, 0, 0, std::move(dims), std::move(dh), std::move(dv));
}

ShortExactSeq random_complex_ses(const Field& f, Rng& rng, int len, std::size_t max_dim)
{
    CochainComplex b = random_complex(f, rng, 0, len, max_dim);
    CochainComplex d = random_complex(f, rng, 0, len, max_dim);
    // middle: B (+) D with differential [[d_B, h],[0, d_D]] where h is a
    // chain map D -> B[1] against the negated target differential
    std::vector<std::size_t> bdims;
    std::vector<Matrix> bdiffs;
    for (int n = -1; n <= b.hi() + 1; ++n)
        bdims.push_back(b.dim(n + 1));
    for (int n = -1; n <= b.hi(); ++n)
        bdiffs.push_back(-b.d(n + 1));
    CochainComplex bshift(f, -1, std::move(bdims), std::move(bdiffs), false);
    ChainMap h = random_chain_map(d, bshift, rng);
    int lo = std::min(b.lo(), d.lo());
    int hi = std::max(b.hi(), d.hi());
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int n = lo; n <= hi; ++n)
        dims.push_back(b.dim(n) + d.dim(n));
    for (int n = lo; n < hi; ++n) {
        BlockBuilder bb(f, {b.dim(n + 1), d.dim(n + 1)}, {b.dim(n), d.dim(n)});
        bb.place(0, 0, b.d(n));
        bb.place(0, 1, h.at(n));
        bb.place(1, 1, d.d(n));
        diffs.push_back(bb.result());
    }
    CochainComplex c(f, lo, std::move(dims), std::move(diffs));
    std::vector<Matrix> inc, prj;
    for (int n = lo; n <= hi; ++n) {
        BlockBuilder bi(f, {b.dim(n), d.dim(n)}, {b.dim(n)});
        bi.place(0, 0, Matrix::identity(f, b.dim(n)));
        inc.push_back(bi.result());
        BlockBuilder bp(f, {d.dim(n)}, {b.dim(n), d.dim(n)});
        bp.place(0, 1, Matrix::identity(f, d.dim(n)));
        prj.push_back(bp.result());
    }
    return ShortExactSeq{ChainMap::make(b, c, lo, std::move(inc)),
                         ChainMap::make(c, d, lo, std::move(prj))};
}

DoubleComplex dying_class_fixture(const Field& f)
{
    // cells: (0,1), (1,0), (1,1), (2,0), all one-dimensional; d_2 is an iso
    std::vector<std::vector<std::size_t>> dims = {{0, 1}, {1, 1}, {1, 0}};
    auto Z = [&](std::size_t r, std::size_t c) { return Matrix::zero(f, r, c); };
    Matrix one(f, 1, 1);
    one.set(0, 0, Scalar(1));
    std::vector<std::vector<Matrix>> dh = {
        {Z(1, 0), one},     // (0,0)->(1,0) empty, (0,1)->(1,1) = 1
        {one, Z(0, 1)},     // (1,0)->(2,0) = 1,   (1,1)->(2,1) empty
        {Z(0, 1), Z(0, 0)}, // edge column
    };
    std::vector<std::vector<Matrix>> dv = {
        {Z(1, 0), Z(0, 1)}, // (0,0)->(0,1), (0,1)->(0,2)
        {one, Z(0, 1)},     // (1,0)->(1,1) = 1
        {Z(0, 1), Z(0, 0)},
    };
    return DoubleComplex(f, 0, 0, std::move(dims), std::move(dh), std::move(dv));
}

Extension1 dual_numbers_nonsplit(const Field& f)
{
    AlgebraPtr A = FinDimAlgebra::dual_numbers(f);
    // k with x acting as zero
    std::vector<Matrix> kaction = {Matrix::identity(f, 1), Matrix::zero(f, 1, 1)};
    AModule k(A, 1, kaction);
    AModule mid = AModule::free_module(A, 1); // A itself, basis (1, x)
    // 0 -> k -> A -> k -> 0: include the socle (x), project by evaluation
    Matrix inj(f, 2, 1);
    inj.set(1, 0, Scalar(1));
    Matrix prj(f, 1, 2);
    prj.set(0, 0, Scalar(1));
    return Extension1{k, mid, k, ModuleMap::make(k, mid, std::move(inj)),
                      ModuleMap::make(mid, k, std::move(prj))};
}

CechAlgebraModel point_model(const AlgebraPtr& alg, std::size_t slots,
                             const std::vector<AModule>& modules)
{
    CechAlgebraModel m;
    m.field = alg->field();
    m.alg = alg;
    m.nerve = Nerve::closure(1, {{0}});
    m.slots = slots;
    m.sectors.push_back(ModelSector{{0}, modules});
    return m;
}

CechAlgebraModel triangle_model(const AlgebraPtr& alg, std::size_t slots,
                                const std::vector<AModule>& modules)
{
    CechAlgebraModel m;
    m.field = alg->field();
    m.alg = alg;
    m.nerve = Nerve::closure(3, {{0, 1}, {0, 2}, {1, 2}});
    m.slots = slots;
    m.sectors.push_back(ModelSector{{0, 1, 2}, modules});
    return m;
}

} // namespace gen

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

namespace {

void check(SuiteResult& r, bool ok, const std::string& what)
{
    ++r.checks;
    if (!ok) {
        ++r.failures;
        if (r.notes.size() < 16)
            r.notes.push_back(what);
    }
}

} // namespace

SuiteResult appendix_suite(std::uint64_t seed, int instances)
{
    SuiteResult res{"appendix", 0, 0, {}};
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        Field f = gen::random_field(rng);
        std::size_t md = (i % 10 == 0) ? 2 : 1;
        CochainComplex p = gen::random_complex(f, rng, -1, 1 + static_cast<int>(rng.below(3)), md);
        CochainComplex k = gen::random_complex(f, rng, 0, 1 + static_cast<int>(rng.below(3)), md);
        CochainComplex l = gen::random_complex(f, rng, -1, 1 + static_cast<int>(rng.below(3)), md);
        ChainMap g = gen::random_chain_map(k, l, rng);
        check(res, cone_hom_commutes(p, g), "cone/cylinder lemma instance " + std::to_string(i));
    }
    return res;
}

SuiteResult d0_suite(std::uint64_t seed, int instances)
{
    SuiteResult res{"d0", 0, 0, {}};
    Rng rng(seed);
    const Field Q = Field::rationals();
    std::vector<SeparatedSequence> fixed = {
        {Q, {{Scalar(0), Scalar(-1), Scalar(1)}, {Scalar(0), Scalar(1)}}},   // x(x-1), y
        {Q, {{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1)}}}, // x,y,z
        {Q, {{Scalar(0), Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1)}}},    // x^2, y (fat)
    };
    auto run_one = [&](const SeparatedSequence& s) {
        EvalModule oz = quotient_module(s);
        std::vector<std::size_t> dims = d0_ext_dims(s);
        bool ok = dims.size() == s.n() + 1;
        long chi = 0;
        for (std::size_t p = 0; p <= s.n(); ++p) {
            ok = ok && dims[p] == oz.dim * binomial(s.n(), p);
            chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(dims[p]);
        }
        check(res, ok, "closed-form oracle");
        check(res, chi == 0, "Euler characteristic");
        KoszulHomComplex kc = koszul_hom(s, oz);
        bool zero = true;
        for (int p = 0; p < static_cast<int>(s.n()); ++p)
            zero = zero && kc.cx.d(p).is_zero();
        check(res, zero, "zero differential on the quotient module");
    };
    for (const auto& s : fixed)
        run_one(s);
    for (int i = 0; i < instances; ++i) {
        // random separated sequence over a random field
        Field f = gen::random_field(rng);
        SeparatedSequence s{f, {}};
        std::size_t n = 1 + rng.below(3);
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t deg = 1 + rng.below(2);
            Poly poly(deg + 1, Scalar(0));
            poly[deg] = 1;
            for (std::size_t c = 0; c < deg; ++c)
                poly[c] = gen::random_scalar(f, rng, 1);
            s.polys.push_back(std::move(poly));
        }
        run_one(s);
        // d^2 = 0 for an arbitrary commuting module, not only the quotient
        std::size_t d = 1 + rng.below(2);
        Matrix x0 = gen::random_matrix(f, rng, d, d, 1);
        std::vector<Matrix> actions;
        for (std::size_t v = 0; v < n; ++v) {
            // powers of one matrix commute
            Matrix p = Matrix::identity(f, d);
            for (std::size_t t = 0; t < v + 1; ++t)
                p = p * x0;
            actions.push_back(p);
        }
        EvalModule m{f, d, actions};
        KoszulHomComplex kc = koszul_hom(s, m);
        check(res, kc.cx.dd_is_zero(), "koszul d^2 = 0 on a generic module");
    }
    return res;
}

SuiteResult les_suite(std::uint64_t seed, int instances)
{
    SuiteResult res{"les", 0, 0, {}};
    Rng rng(seed);
    // dual numbers fixture: 0 -> k -> k -> k -> k -> 0 with iso connecting map
    for (const Field& f : {Field::rationals(), Field::prime_field(3)}) {
        Extension1 u = gen::dual_numbers_nonsplit(f);
        StringLesReport rep = les_report(u, u.quo, LesSide::contravariant_to_g, 3);
        check(res, rep.exact, "dual numbers fixture exactness");
        // dims 1,1,1,1 then 0: Hom(D),Hom(C),Hom(B),Ext1(D),Ext1(C)=0
        bool dims_ok = rep.les.dims.size() >= 7 && rep.les.dims[1] == 1 && rep.les.dims[2] == 1 &&
                       rep.les.dims[3] == 1 && rep.les.dims[4] == 1 && rep.les.dims[5] == 0;
        check(res, dims_ok, "dual numbers fixture dims 0->k->k->k->k->0");
        // the connecting map Hom(B,G) -> Ext^1(D,G) is an isomorphism
        check(res, rep.les.maps.size() > 3 && rank(rep.les.maps[3]) == 1,
              "dual numbers fixture iso connecting map");
    }
    for (int i = 0; i < instances; ++i) {
        Field f = gen::random_field(rng);
        AlgebraPtr alg = gen::random_algebra(f, rng);
        Extension1 u = gen::random_ses(alg, rng);
        AModule other = gen::random_module(alg, rng);
        LesSide side = rng.flip() ? LesSide::covariant_from_f : LesSide::contravariant_to_g;
        StringLesReport rep = les_report(u, other, side, 3);
        check(res, rep.exact, "random LES exactness " + std::to_string(i));
        if (rep.free_case_checked)
            check(res, rep.free_case_ok, "free-module vertex identification " + std::to_string(i));
    }
    return res;
}

SuiteResult spectral_suite(std::uint64_t seed, int instances)
{
    SuiteResult res{"spectral", 0, 0, {}};
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        Field f = gen::random_field(rng);
        int width = 2 + static_cast<int>(rng.below(2));
        int height = 2 + static_cast<int>(rng.below(2));
        DoubleComplex dc = gen::random_double_complex(f, rng, width, height, 2);
        check(res, abutment_check(dc), "abutment " + std::to_string(i));
        // pages: dims weakly decrease, d_r d_r = 0, E_{r+1} = ker/im
        int rmax = dc.stabilization_page();
        SpectralPage prev = page(dc, 2);
        for (int r = 3; r <= std::min(rmax, 4); ++r) {
            SpectralPage cur = page(dc, r);
            bool mono = true, kerim = true, ddzero = true;
            for (const auto& [pq, cell] : cur.cells) {
                const PageCell& before = prev.cells.at(pq);
                mono = mono && cell.dim <= before.dim;
                // E_r = ker(d_{r-1}) / im(d_{r-1}) from the previous page
                const Matrix& dout = prev.d.at(pq);
                auto itin = prev.d.find({pq.first - (r - 1), pq.second + (r - 1) - 1});
                std::size_t rk_in = itin == prev.d.end() ? 0 : rank(itin->second);
                std::size_t expect =
                    before.dim - rank(dout) - rk_in;
                kerim = kerim && cell.dim == expect;
            }
            for (const auto& [pq, d] : prev.d) {
                auto next = prev.d.find({pq.first + (r - 1), pq.second - (r - 1) + 1});
                if (next != prev.d.end() && next->second.rows() > 0 && d.cols() > 0 &&
                    next->second.cols() == d.rows())
                    ddzero = ddzero && (next->second * d).is_zero();
            }
            check(res, mono, "page dims weakly decrease " + std::to_string(i));
            check(res, kerim, "E_{r+1} = ker/im " + std::to_string(i));
            check(res, ddzero, "d_r^2 = 0 " + std::to_string(i));
            prev = std::move(cur);
        }
    }
    // the dying-class fixture: Dies(2) and alpha = 0 rule
    DoubleComplex fx = gen::dying_class_fixture(Field::rationals());
    Vec a{Scalar(1)};
    ClassLift lift = class_map(fx, 0, 1, a);
    check(res, !lift.survives && lift.dies_at == 2, "dying fixture Dies(2)");
    check(res, abutment_check(fx), "dying fixture abutment");
    return res;
}

SuiteResult correlation_suite(std::uint64_t seed)
{
    SuiteResult res{"correlation", 0, 0, {}};
    Rng rng(seed);
    for (const Field& f : {Field::rationals(), Field::prime_field(5)}) {
        AlgebraPtr alg = FinDimAlgebra::field_algebra(f);
        AlgebraPtr dual = FinDimAlgebra::dual_numbers(f);
        for (std::size_t k = 1; k <= 3; ++k) {
            // point nerve, free modules of small rank
            {
                std::vector<AModule> mods;
                std::size_t r = 1 + (k % 2);
                for (std::size_t t = 0; t <= k; ++t)
                    mods.push_back(AModule::free_module(alg, r));
                mods.back() = mods.front();
                CechAlgebraModel model = gen::point_model(alg, k, mods);
                std::vector<LocalOperator> ops;
                bool have = true;
                for (std::size_t t = 1; t <= k; ++t) {
                    auto basis = operator_basis(model, t, 0, 0);
                    if (basis.empty()) {
                        have = false;
                        break;
                    }
                    ops.push_back(basis[rng.below(basis.size())]);
                }
                if (have) {
                    TopScalarLayout top = top_scalar_layout(model, 0);
                    Vec vol(top.total, Scalar(0));
                    for (std::size_t t = 0; t < top.total; ++t)
                        vol[t] = Scalar(static_cast<long>(t + 1));
                    EquivalenciaReport rep = equivalencia_check(model, ops, vol);
                    check(res, rep.equal, "point-model equivalencia k=" + std::to_string(k));
                }
            }
            // triangle boundary, one operator at q=1 and the rest at q=0
            {
                std::vector<AModule> mods;
                for (std::size_t t = 0; t <= k; ++t)
                    mods.push_back(AModule::free_module(dual, 1));
                CechAlgebraModel model = gen::triangle_model(dual, k, mods);
                std::vector<LocalOperator> ops;
                bool have = true;
                for (std::size_t t = 1; t <= k; ++t) {
                    int q = (t == 1) ? 1 : 0;
                    auto basis = operator_basis(model, t, 0, q);
                    if (basis.empty()) {
                        have = false;
                        break;
                    }
                    ops.push_back(basis[rng.below(basis.size())]);
                }
                if (have) {
                    TopScalarLayout top = top_scalar_layout(model, 1);
                    Vec vol(top.total, Scalar(0));
                    for (std::size_t t = 0; t < top.total; ++t)
                        vol[t] = Scalar(static_cast<long>(2 * t + 1));
                    EquivalenciaReport rep = equivalencia_check(model, ops, vol);
                    check(res, rep.equal, "triangle equivalencia k=" + std::to_string(k));
                    // the wrong-signed cup must disagree whenever the value
                    // is nonzero and at least one composition step ran
                    if (rep.via_cup != 0 && ops.size() >= 2) {
                        EquivalenciaReport bad = equivalencia_check(model, ops, vol, true);
                        check(res, !bad.equal, "wrong-sign negative control");
                    }
                }
            }
        }
        // multilinearity on the point model with k = 2 endomorphisms
        {
            std::vector<AModule> mods = {AModule::free_module(alg, 2),
                                         AModule::free_module(alg, 2),
                                         AModule::free_module(alg, 2)};
            CechAlgebraModel model = gen::point_model(alg, 2, mods);
            auto basis1 = operator_basis(model, 1, 0, 0);
            auto basis2 = operator_basis(model, 2, 0, 0);
            TopScalarLayout top = top_scalar_layout(model, 0);
            Vec vol(top.total, Scalar(1));
            VolumeFunctional vf = locally_free_trace(model, 0, vol);
            auto scale_op = [&](const LocalOperator& op, const Scalar& c) {
                LocalOperator out = op;
                for (auto& per : out.data)
                    for (auto& v : per)
                        for (auto& x : v)
                            x = f.mul(x, c);
                return out;
            };
            const LocalOperator& a1 = basis1[0];
            const LocalOperator& a2 = basis2[basis2.size() - 1];
            Scalar base = correlate(model, {a1, a2}, vf).value;
            Scalar scaled = correlate(model, {scale_op(a1, Scalar(3)), a2}, vf).value;
            check(res, scaled == f.mul(base, Scalar(3)), "multilinearity (scaling)");
            LocalOperator sum = a1;
            const LocalOperator& b1 = basis1[basis1.size() - 1];
            for (std::size_t z = 0; z < sum.data.size(); ++z)
                for (std::size_t fp = 0; fp < sum.data[z].size(); ++fp)
                    for (std::size_t t = 0; t < sum.data[z][fp].size(); ++t)
                        sum.data[z][fp][t] = f.add(sum.data[z][fp][t], b1.data[z][fp][t]);
            Scalar lhs = correlate(model, {sum, a2}, vf).value;
            Scalar rhs = f.add(correlate(model, {a1, a2}, vf).value,
                               correlate(model, {b1, a2}, vf).value);
            check(res, lhs == rhs, "multilinearity (additivity)");
            // dying classes force the value to zero
            LocalOperator dying = a1;
            dying.dc_override = gen::dying_class_fixture(f);
            dying.p = 1;
            dying.q = 0;
            LocalOperator partner = a2;
            partner.p = 0;
            partner.q = 0;
            // total degree 1 with the override occupying (p,q)=(1,0)
            VolumeFunctional vf1;
            vf1.n = 1;
            vf1.coeffs.assign(string_space_layout(model, 0, 2, 1).total, Scalar(1));
            dying.dc_cocycle = Vec{Scalar(1)};
            CorrelationReport rep = correlate(model, {dying, partner}, vf1);
            check(res, rep.any_died && rep.value == 0, "dying class maps to zero");
            // nondegeneracy of the locally free trace in the free case
            check(res, volume_nondegenerate_on_free(model, vf), "free-trace nondegeneracy");
        }
    }
    return res;
}

std::vector<SuiteResult> run_suite(const std::string& name, std::uint64_t seed)
{
    if (name == "appendix")
        return {appendix_suite(seed, 500)};
    if (name == "d0")
        return {d0_suite(seed, 25)};
    if (name == "les")
        return {les_suite(seed, 200)};
    if (name == "spectral")
        return {spectral_suite(seed, 200)};
    if (name == "correlation")
        return {correlation_suite(seed)};
    if (name == "all") {
        std::vector<SuiteResult> out;
        for (const char* n : {"appendix", "d0", "les", "spectral", "correlation"})
            for (auto& r : run_suite(n, seed))
                out.push_back(std::move(r));
        return out;
    }
    fail(Errc::unknown_suite, "unknown verify suite '" + name + "'");
}

} // namespace homcat
