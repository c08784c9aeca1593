#include "homcat/correlation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace homcat {

namespace {

bool subset_of(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

void CechAlgebraModel::validate() const
{
    nerve.validate();
    require(alg != nullptr, Errc::invalid_argument, "model: missing algebra");
    require(!sectors.empty(), Errc::invalid_argument, "model: no sectors");
    for (const auto& s : sectors) {
        require(!s.support.empty(), Errc::invalid_argument, "model: empty sector support");
        for (int v : s.support)
            require(v >= 0 && v < static_cast<int>(nerve.vertex_count), Errc::invalid_argument,
                    "model: sector support vertex out of range");
        require(s.modules.size() == slots + 1, Errc::shape_mismatch,
                "model: each sector needs k+1 modules");
        for (const auto& m : s.modules) {
            require(m.algebra()->key() == alg->key(), Errc::invalid_argument,
                    "model: sector module over a different algebra");
            m.validate();
        }
    }
}

bool CechAlgebraModel::cyclic() const
{
    for (const auto& s : sectors)
        if (!s.modules.front().same_as(s.modules.back()))
            return false;
    return true;
}

namespace {

// All per-sector machinery for the pair (F_a, F_b): resolutions, vertical ext
// complexes, sector subnerve Cech complexes, the assembled double complex and
// its block layout.
struct PairContext {
    const CechAlgebraModel* model = nullptr;
    std::size_t a = 0, b = 0;
    std::size_t L = 0;
    std::vector<FreeResolution> res;     // per sector, of F_a^z
    std::vector<CochainComplex> vert;    // per sector, ext cochain complex
    std::vector<Nerve> subnerve;         // per sector
    std::vector<CechComplexData> scalar; // per sector, constant dim-1 Cech complex
    DoubleComplex dc;

    PairContext(const CechAlgebraModel& m, std::size_t a_, std::size_t b_, std::size_t L_)
        : model(&m), a(a_), b(b_), L(L_), dc(build(m, a_, b_, L_))
    {
    }

    // offset of the (face, sector) block inside cell (P, Q); face given by its
    // index in the full nerve; npos when the sector is not on the face
    std::size_t block_offset(int P, int Q, std::size_t face_id, std::size_t z) const
    {
        const Nerve& n = model->nerve;
        auto ids = n.faces_of_dim(P);
        std::size_t off = 0;
        for (auto id : ids) {
            for (std::size_t zz = 0; zz < model->sectors.size(); ++zz) {
                if (!subset_of(n.faces[id], sorted(model->sectors[zz].support)))
                    continue;
                if (id == face_id && zz == z)
                    return off;
                off += vert[zz].dim(Q);
            }
        }
        fail(Errc::internal, "block_offset: sector not present on the face");
    }

private:
    DoubleComplex build(const CechAlgebraModel& m, std::size_t a_, std::size_t b_, std::size_t L_)
    {
        const Field& F = m.field;
        const Nerve& n = m.nerve;
        for (const auto& sec : m.sectors) {
            FreeResolution r = free_resolution(sec.modules[a_], L_);
            vert.push_back(ext_cochain_complex(r, sec.modules[b_], L_));
            res.push_back(std::move(r));
            Nerve sn = n.full_subcomplex(sec.support);
            scalar.push_back(cech_complex(NervePresheaf::constant(sn, F, 1)));
            subnerve.push_back(std::move(sn));
        }
        const int maxp = n.max_dim();
        std::vector<std::vector<std::size_t>> dims(static_cast<std::size_t>(maxp + 1));
        std::vector<std::vector<Matrix>> dh(static_cast<std::size_t>(maxp + 1)),
            dv(static_cast<std::size_t>(maxp + 1));
        auto sectors_on = [&](std::size_t fid) {
            std::vector<std::size_t> zs;
            for (std::size_t z = 0; z < m.sectors.size(); ++z)
                if (subset_of(n.faces[fid], sorted(m.sectors[z].support)))
                    zs.push_back(z);
            return zs;
        };
        for (int P = 0; P <= maxp; ++P) {
            auto ids = n.faces_of_dim(P);
            for (int Q = 0; Q <= static_cast<int>(L_); ++Q) {
                std::size_t cdim = 0;
                for (auto id : ids)
                    for (auto z : sectors_on(id))
                        cdim += vert[z].dim(Q);
                dims[static_cast<std::size_t>(P)].push_back(cdim);
            }
        }
        for (int P = 0; P <= maxp; ++P) {
            auto ids = n.faces_of_dim(P);
            auto dst_ids = n.faces_of_dim(P + 1);
            for (int Q = 0; Q <= static_cast<int>(L_); ++Q) {
                // vertical, with the (-1)^P column sign
                const std::size_t rows_v =
                    (Q + 1 <= static_cast<int>(L_)) ? dims[static_cast<std::size_t>(P)]
                                                        [static_cast<std::size_t>(Q + 1)]
                                                    : 0;
                Matrix v(F, rows_v, dims[static_cast<std::size_t>(P)][static_cast<std::size_t>(Q)]);
                const Scalar sgn = (P % 2 == 0) ? Scalar(1) : Scalar(-1);
                std::size_t ro = 0, co = 0;
                for (auto id : ids)
                    for (auto z : sectors_on(id)) {
                        Matrix blk = vert[z].d(Q).scaled(sgn);
                        for (std::size_t i = 0; i < blk.rows(); ++i)
                            for (std::size_t j = 0; j < blk.cols(); ++j)
                                if (blk(i, j) != 0)
                                    v.set(ro + i, co + j, blk(i, j));
                        ro += vert[z].dim(Q + 1);
                        co += vert[z].dim(Q);
                    }
                dv[static_cast<std::size_t>(P)].push_back(std::move(v));

                // horizontal Cech alternating sum, identity on shared sectors
                std::size_t hrows = 0;
                for (auto id : dst_ids)
                    for (auto z : sectors_on(id))
                        hrows += vert[z].dim(Q);
                Matrix h(F, hrows, dims[static_cast<std::size_t>(P)][static_cast<std::size_t>(Q)]);
                std::size_t dro = 0;
                for (auto sid : dst_ids) {
                    const auto& sigma = n.faces[sid];
                    for (auto z : sectors_on(sid)) {
                        for (std::size_t j = 0; j < sigma.size(); ++j) {
                            std::vector<int> tau;
                            for (std::size_t t = 0; t < sigma.size(); ++t)
                                if (t != j)
                                    tau.push_back(sigma[t]);
                            long tid = n.face_index(tau);
                            // column offset of (tau, z) at (P, Q)
                            std::size_t co2 = 0;
                            bool found = false;
                            for (auto id2 : ids) {
                                for (auto z2 : sectors_on(id2)) {
                                    if (id2 == static_cast<std::size_t>(tid) && z2 == z) {
                                        found = true;
                                        break;
                                    }
                                    co2 += vert[z2].dim(Q);
                                }
                                if (found)
                                    break;
                            }
                            const Scalar s2 = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
                            for (std::size_t t = 0; t < vert[z].dim(Q); ++t)
                                h.set(dro + t, co2 + t,
                                      F.add(h(dro + t, co2 + t), s2));
                        }
                        dro += vert[z].dim(Q);
                    }
                }
                dh[static_cast<std::size_t>(P)].push_back(std::move(h));
            }
        }
        return DoubleComplex(F, 0, 0, std::move(dims), std::move(dh), std::move(dv));
    }
};

// ext cohomology data of one sector pair at degree j
struct ExtBasis {
    std::size_t dim = 0;
    std::vector<Vec> reps;
};

ExtBasis ext_basis(const PairContext& ctx, std::size_t z, int j)
{
    Cohomology h = ctx.vert[z].cohomology(j);
    return ExtBasis{h.dim, h.reps};
}

// per-sector coefficients over the (i, j) product blocks of a pair layout
using FoldCoeffs = std::vector<std::map<std::pair<int, int>, Matrix>>;
// (coefficient matrices are h_dim x e_dim grids stored as 1 x (h*e) rows;
//  we keep them as Vec for simplicity)
using SectorCoeffs = std::vector<std::map<std::pair<int, int>, Vec>>;

// embed a product cocycle c_alpha (x) xi into Tot^N coordinates of ctx.dc
Vec embed_product(const PairContext& ctx, std::size_t z, int i, int j, const Vec& c_alpha,
                  const Vec& xi)
{
    const int N = i + j;
    Vec out(ctx.dc.total_dim(N), Scalar(0));
    const Field& F = ctx.model->field;
    auto faces = ctx.subnerve[z].faces_of_dim(i);
    // locate the cell (P=i, Q=j) offset inside Tot^N
    std::size_t cell_off = 0;
    for (const auto& c : ctx.dc.cells(N))
        if (c.p == i && c.q == j)
            cell_off = c.offset;
    for (std::size_t fpos = 0; fpos < faces.size(); ++fpos) {
        const Scalar& coef = c_alpha[fpos];
        if (coef == 0)
            continue;
        long fid = ctx.model->nerve.face_index(ctx.subnerve[z].faces[faces[fpos]]);
        std::size_t off = ctx.block_offset(i, j, static_cast<std::size_t>(fid), z);
        for (std::size_t t = 0; t < xi.size(); ++t)
            out[cell_off + off + t] = F.add(out[cell_off + off + t], F.mul(coef, xi[t]));
    }
    return out;
}

// decompose a total cocycle of ctx.dc at degree N into product coordinates
SectorCoeffs kunneth_decompose(const PairContext& ctx, int N, const Vec& total)
{
    const Field& F = ctx.model->field;
    const std::size_t S = ctx.model->sectors.size();
    std::vector<Vec> basis_vectors;
    struct Tag {
        std::size_t z;
        int i, j;
        std::size_t alpha, beta;
    };
    std::vector<Tag> tags;
    for (std::size_t z = 0; z < S; ++z)
        for (int i = 0; i <= ctx.subnerve[z].max_dim(); ++i) {
            int j = N - i;
            if (j < 0 || j > static_cast<int>(ctx.L))
                continue;
            Cohomology hc = ctx.scalar[z].cx.cohomology(i);
            ExtBasis eb = ext_basis(ctx, z, j);
            for (std::size_t al = 0; al < hc.dim; ++al)
                for (std::size_t be = 0; be < eb.dim; ++be) {
                    basis_vectors.push_back(
                        embed_product(ctx, z, i, j, hc.reps[al], eb.reps[be]));
                    tags.push_back(Tag{z, i, j, al, be});
                }
        }
    // sanity: the product classes span H^N (Kunneth for sector sums)
    CochainComplex tot = ctx.dc.total();
    require(basis_vectors.size() == tot.cohomology(N).dim, Errc::internal,
            "kunneth: product basis count mismatch");
    // total = sum coeff * basis + D(w)
    const std::size_t dimN = ctx.dc.total_dim(N);
    Matrix dprev = tot.d(N - 1);
    Matrix sys(F, dimN, basis_vectors.size() + dprev.cols());
    for (std::size_t k = 0; k < basis_vectors.size(); ++k)
        for (std::size_t t = 0; t < dimN; ++t)
            sys.set(t, k, basis_vectors[k][t]);
    for (std::size_t c = 0; c < dprev.cols(); ++c)
        for (std::size_t t = 0; t < dimN; ++t)
            sys.set(t, basis_vectors.size() + c, dprev(t, c));
    auto sol = solve(sys, total);
    require(sol.has_value(), Errc::internal, "kunneth: decomposition failed");
    SectorCoeffs out(S);
    for (std::size_t k = 0; k < tags.size(); ++k) {
        const Tag& tg = tags[k];
        auto key = std::make_pair(tg.i, tg.j);
        auto& slot = out[tg.z][key];
        Cohomology hc = ctx.scalar[tg.z].cx.cohomology(tg.i);
        ExtBasis eb = ext_basis(ctx, tg.z, tg.j);
        if (slot.empty())
            slot.assign(hc.dim * eb.dim, Scalar(0));
        slot[tg.alpha * eb.dim + tg.beta] = (*sol)[k];
    }
    return out;
}

// cup product class coordinates on the scalar Cech complex of a subnerve
Vec cup_class(const Field& F, const Nerve& sub, const CechComplexData& cech, int i, const Vec& ca,
              int i2, const Vec& cb)
{
    auto faces = sub.faces_of_dim(i + i2);
    Vec w(faces.size(), Scalar(0));
    auto fi = sub.faces_of_dim(i);
    auto fi2 = sub.faces_of_dim(i2);
    for (std::size_t s = 0; s < faces.size(); ++s) {
        const auto& sigma = sub.faces[faces[s]];
        std::vector<int> front(sigma.begin(), sigma.begin() + i + 1);
        std::vector<int> back(sigma.begin() + i, sigma.end());
        long fid = sub.face_index(front);
        long bid = sub.face_index(back);
        std::size_t fpos = 0, bpos = 0;
        for (std::size_t t = 0; t < fi.size(); ++t)
            if (fi[t] == static_cast<std::size_t>(fid))
                fpos = t;
        for (std::size_t t = 0; t < fi2.size(); ++t)
            if (fi2[t] == static_cast<std::size_t>(bid))
                bpos = t;
        w[s] = F.mul(ca[fpos], cb[bpos]);
    }
    return cech.cx.class_coordinates(i + i2, w);
}

struct OpClassData {
    bool survives = false;
    int dies_at = -1;
    SectorCoeffs coeffs; // per sector, (i,j) -> (alpha,beta) coefficients
};

OpClassData run_class_map(const CechAlgebraModel& model, const LocalOperator& op,
                          const PairContext& ctx)
{
    OpClassData out;
    if (op.dc_override.has_value()) {
        // synthetic geometry: only the survive/die verdict is used
        int cp = op.q, cq = op.p;
        ClassLift lift = class_map(*op.dc_override, cp, cq, op.dc_cocycle);
        out.survives = lift.survives;
        out.dies_at = lift.dies_at;
        return out;
    }
    // assemble the E_2 cocycle at cell (P = q, Q = p)
    const Field& F = model.field;
    Vec a(ctx.dc.dim(op.q, op.p), Scalar(0));
    for (std::size_t z = 0; z < model.sectors.size(); ++z) {
        auto faces = ctx.subnerve[z].faces_of_dim(op.q);
        require(op.data[z].size() == faces.size(), Errc::shape_mismatch,
                "operator data: one ext-class per sector q-face");
        ExtBasis eb = ext_basis(ctx, z, op.p);
        for (std::size_t fpos = 0; fpos < faces.size(); ++fpos) {
            require(op.data[z][fpos].size() == eb.dim, Errc::shape_mismatch,
                    "operator data: ext coordinate length mismatch");
            Vec val(ctx.vert[z].dim(op.p), Scalar(0));
            for (std::size_t be = 0; be < eb.dim; ++be)
                if (op.data[z][fpos][be] != 0)
                    for (std::size_t t = 0; t < val.size(); ++t)
                        val[t] = F.add(val[t], F.mul(op.data[z][fpos][be], eb.reps[be][t]));
            long fid = model.nerve.face_index(ctx.subnerve[z].faces[faces[fpos]]);
            std::size_t off = ctx.block_offset(op.q, op.p, static_cast<std::size_t>(fid), z);
            for (std::size_t t = 0; t < val.size(); ++t)
                a[off + t] = val[t];
        }
    }
    ClassLift lift = class_map(ctx.dc, op.q, op.p, a);
    out.survives = lift.survives;
    out.dies_at = lift.dies_at;
    if (lift.survives)
        out.coeffs = kunneth_decompose(ctx, op.p + op.q, lift.total_cocycle);
    return out;
}

} // namespace

StringSpaceLayout string_space_layout(const CechAlgebraModel& model, std::size_t a, std::size_t b,
                                      int n)
{
    model.validate();
    const std::size_t L = static_cast<std::size_t>(n) + 2;
    PairContext ctx(model, a, b, L);
    StringSpaceLayout lay;
    for (std::size_t z = 0; z < model.sectors.size(); ++z)
        for (int i = 0; i <= ctx.subnerve[z].max_dim(); ++i) {
            int j = n - i;
            if (j < 0)
                continue;
            Cohomology hc = ctx.scalar[z].cx.cohomology(i);
            ExtBasis eb = ext_basis(ctx, z, j);
            lay.blocks.push_back(
                StringSpaceLayout::Block{z, i, j, lay.total, hc.dim, eb.dim});
            lay.total += hc.dim * eb.dim;
        }
    return lay;
}

TopScalarLayout top_scalar_layout(const CechAlgebraModel& model, int n)
{
    model.validate();
    TopScalarLayout lay;
    lay.alg_dim = model.alg->dim();
    for (std::size_t z = 0; z < model.sectors.size(); ++z) {
        Nerve sub = model.nerve.full_subcomplex(model.sectors[z].support);
        CechComplexData c = cech_complex(NervePresheaf::constant(sub, model.field, 1));
        std::size_t h = c.cx.cohomology(n).dim;
        lay.blocks.push_back(TopScalarLayout::Block{z, lay.total, h});
        lay.total += h * lay.alg_dim;
    }
    return lay;
}

namespace {

// trace of an endomorphism of a free module, as algebra coordinates
Vec module_trace(const AlgebraPtr& alg, const ModuleMap& iso, const Matrix& endo)
{
    const Field& F = alg->field();
    const std::size_t na = alg->dim();
    const std::size_t r = iso.src.dim() / na;
    auto inv = [&](const Vec& y) {
        auto x = solve(iso.mat, y);
        require(x.has_value(), Errc::internal, "module_trace: iso solve failed");
        return *x;
    };
    Vec tr(na, Scalar(0));
    for (std::size_t t = 0; t < r; ++t) {
        Vec gen = free_generator(alg, r, t);
        Vec img = inv(endo.apply(iso.mat.apply(gen)));
        // diagonal block (t, t): algebra coordinates at positions t*na..
        for (std::size_t c = 0; c < na; ++c)
            tr[c] = F.add(tr[c], img[t * na + c]);
    }
    return tr;
}

} // namespace

VolumeFunctional locally_free_trace(const CechAlgebraModel& model, int n, const Vec& vol_scalar)
{
    model.validate();
    TopScalarLayout top = top_scalar_layout(model, n);
    require(vol_scalar.size() == top.total, Errc::shape_mismatch,
            "locally_free_trace: vol_scalar length mismatch");
    StringSpaceLayout lay = string_space_layout(model, 0, model.slots, n);
    const std::size_t L = static_cast<std::size_t>(n) + 2;
    PairContext ctx(model, 0, model.slots, L);
    VolumeFunctional vf;
    vf.n = n;
    vf.coeffs.assign(lay.total, Scalar(0));
    const Field& F = model.field;
    for (const auto& blk : lay.blocks) {
        const AModule& F0 = model.sectors[blk.sector].modules[0];
        auto iso = free_structure(F0);
        require(iso.has_value(), Errc::not_free, "locally_free_trace: F_0 is not free");
        if (blk.e_dim == 0 || blk.h_dim == 0)
            continue;
        if (blk.j != 0)
            continue; // Ext^{j>0}(free, free) is zero-dimensional anyway
        ExtBasis eb = ext_basis(ctx, blk.sector, 0);
        // only the top Cech degree pairs against vol_scalar
        if (blk.i != n)
            continue;
        const auto& tblk = top.blocks[blk.sector];
        for (std::size_t al = 0; al < blk.h_dim; ++al)
            for (std::size_t be = 0; be < blk.e_dim; ++be) {
                // tr of the ext-basis endomorphism
                Matrix full = hom_from_generator_values(ctx.res[blk.sector], 0, F0,
                                                        eb.reps[be]);
                // degree-0 cocycle = m o aug: recover m on the free structure
                Matrix m(F, F0.dim(), F0.dim());
                for (std::size_t c2 = 0; c2 < F0.dim(); ++c2) {
                    Vec e(F0.dim(), Scalar(0));
                    e[c2] = 1;
                    auto w = solve(ctx.res[blk.sector].aug, e);
                    require(w.has_value(), Errc::internal, "locally_free_trace: aug solve");
                    Vec img = full.apply(*w);
                    for (std::size_t i2 = 0; i2 < F0.dim(); ++i2)
                        m.set(i2, c2, img[i2]);
                }
                Vec tr = module_trace(model.alg, *iso, m);
                Scalar acc(0);
                for (std::size_t c2 = 0; c2 < top.alg_dim; ++c2)
                    if (tr[c2] != 0)
                        acc = F.add(acc,
                                    F.mul(tr[c2], vol_scalar[tblk.offset + al * top.alg_dim + c2]));
                vf.coeffs[blk.offset + al * blk.e_dim + be] = acc;
            }
    }
    return vf;
}

CorrelationReport correlate(const CechAlgebraModel& model, const std::vector<LocalOperator>& ops,
                            const VolumeFunctional& vol)
{
    model.validate();
    require(ops.size() == model.slots, Errc::shape_mismatch,
            "correlate: need one operator per slot");
    require(model.cyclic(), Errc::endpoint_mismatch, "correlate: F_k must equal F_0");
    int total_degree = 0;
    for (std::size_t j = 0; j < ops.size(); ++j) {
        require(ops[j].slot == j + 1, Errc::invalid_argument, "correlate: operators out of order");
        total_degree += ops[j].p + ops[j].q;
    }
    require(total_degree == vol.n, Errc::degree_mismatch,
            "correlate: operator degrees must sum to the volume degree");

    const Field& F = model.field;
    const std::size_t L = static_cast<std::size_t>(vol.n) + 2;
    CorrelationReport rep;
    rep.value = Scalar(0);

    // class map per operator
    std::vector<OpClassData> classes;
    for (std::size_t j = 0; j < ops.size(); ++j) {
        PairContext ctx(model, j, j + 1, L);
        OpClassData d = run_class_map(model, ops[j], ctx);
        rep.statuses.push_back(d.survives ? std::string("survives")
                                          : "dies(" + std::to_string(d.dies_at) + ")");
        if (!d.survives)
            rep.any_died = true;
        classes.push_back(std::move(d));
    }
    if (rep.any_died)
        return rep; // alpha_j = 0 forces the product to zero

    // fold the Yoneda/cup composition sector by sector
    // state: pair (0, t) coefficients per sector per (i, j)
    SectorCoeffs state = classes[0].coeffs;
    int acc_degree = ops[0].p + ops[0].q;
    for (std::size_t t = 1; t < ops.size(); ++t) {
        const int step_degree = ops[t].p + ops[t].q;
        PairContext acc_ctx(model, 0, t, L);
        PairContext step_ctx(model, t, t + 1, L);
        PairContext next_ctx(model, 0, t + 1, L);
        SectorCoeffs next(model.sectors.size());
        for (std::size_t z = 0; z < model.sectors.size(); ++z) {
            for (const auto& [ij1, coef1] : state[z]) {
                if (coef1.empty())
                    continue;
                Cohomology h1 = acc_ctx.scalar[z].cx.cohomology(ij1.first);
                ExtBasis e1 = ext_basis(acc_ctx, z, ij1.second);
                for (const auto& [ij2, coef2] : classes[t].coeffs[z]) {
                    if (coef2.empty())
                        continue;
                    Cohomology h2 = step_ctx.scalar[z].cx.cohomology(ij2.first);
                    ExtBasis e2 = ext_basis(step_ctx, z, ij2.second);
                    const int i3 = ij1.first + ij2.first;
                    const int j3 = ij1.second + ij2.second;
                    if (i3 > acc_ctx.subnerve[z].max_dim())
                        continue;
                    Cohomology h3 = next_ctx.scalar[z].cx.cohomology(i3);
                    ExtBasis e3 = ext_basis(next_ctx, z, j3);
                    if (h3.dim == 0 || e3.dim == 0)
                        continue;
                    auto key = std::make_pair(i3, j3);
                    auto& slot = next[z][key];
                    if (slot.empty())
                        slot.assign(h3.dim * e3.dim, Scalar(0));
                    // Koszul sign: ext degree of the left factor past the
                    // Cech degree of the right factor
                    const bool neg = (ij1.second * ij2.first) % 2 != 0;
                    for (std::size_t a1 = 0; a1 < h1.dim; ++a1)
                        for (std::size_t b1 = 0; b1 < e1.dim; ++b1) {
                            const Scalar& c1 = coef1[a1 * e1.dim + b1];
                            if (c1 == 0)
                                continue;
                            for (std::size_t a2 = 0; a2 < h2.dim; ++a2) {
                                Vec cup = cup_class(F, next_ctx.subnerve[z],
                                                    next_ctx.scalar[z], ij1.first,
                                                    h1.reps[a1], ij2.first, h2.reps[a2]);
                                for (std::size_t b2 = 0; b2 < e2.dim; ++b2) {
                                    const Scalar& c2 = coef2[a2 * e2.dim + b2];
                                    if (c2 == 0)
                                        continue;
                                    ExtClass left{model.sectors[z].modules[0],
                                                  model.sectors[z].modules[t],
                                                  static_cast<std::size_t>(ij1.second),
                                                  e1.reps[b1]};
                                    ExtClass right{model.sectors[z].modules[t],
                                                   model.sectors[z].modules[t + 1],
                                                   static_cast<std::size_t>(ij2.second),
                                                   e2.reps[b2]};
                                    ExtClass prod = yoneda_product(left, right);
                                    Vec pcoords = next_ctx.vert[z].class_coordinates(
                                        j3, prod.cocycle);
                                    Scalar c12 = F.mul(c1, c2);
                                    if (neg)
                                        c12 = F.neg(c12);
                                    for (std::size_t a3 = 0; a3 < h3.dim; ++a3)
                                        for (std::size_t b3 = 0; b3 < e3.dim; ++b3) {
                                            Scalar add = F.mul(
                                                c12, F.mul(cup[a3], pcoords[b3]));
                                            slot[a3 * e3.dim + b3] =
                                                F.add(slot[a3 * e3.dim + b3], add);
                                        }
                                }
                            }
                        }
                }
            }
        }
        state = std::move(next);
        acc_degree += step_degree;
    }

    // apply t via the string-space layout for the pair (0, k)
    StringSpaceLayout lay = string_space_layout(model, 0, model.slots, vol.n);
    require(vol.coeffs.size() == lay.total, Errc::shape_mismatch,
            "correlate: volume functional length mismatch");
    Scalar value(0);
    for (const auto& blk : lay.blocks) {
        auto it = state[blk.sector].find({blk.i, blk.j});
        if (it == state[blk.sector].end() || it->second.empty())
            continue;
        for (std::size_t t = 0; t < blk.h_dim * blk.e_dim; ++t)
            value = F.add(value, F.mul(it->second[t], vol.coeffs[blk.offset + t]));
    }
    rep.value = value;
    return rep;
}

bool volume_nondegenerate_on_free(const CechAlgebraModel& model, const VolumeFunctional& vol)
{
    // pairing H^i (x) Hom against H^{n-i} (x) Hom through t(sigma * tau)
    model.validate();
    const std::size_t L = static_cast<std::size_t>(vol.n) + 2;
    PairContext ctx(model, 0, model.slots, L);
    StringSpaceLayout lay = string_space_layout(model, 0, model.slots, vol.n);
    for (int i = 0; i <= vol.n; ++i) {
        // collect bases of degree i and n-i parts across sectors
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> left, right;
        for (std::size_t z = 0; z < model.sectors.size(); ++z) {
            Cohomology hi = ctx.scalar[z].cx.cohomology(i);
            Cohomology hni = ctx.scalar[z].cx.cohomology(vol.n - i);
            ExtBasis e0 = ext_basis(ctx, z, 0);
            for (std::size_t al = 0; al < hi.dim; ++al)
                for (std::size_t be = 0; be < e0.dim; ++be)
                    left.emplace_back(z, al, be);
            for (std::size_t al = 0; al < hni.dim; ++al)
                for (std::size_t be = 0; be < e0.dim; ++be)
                    right.emplace_back(z, al, be);
        }
        if (left.empty() && right.empty())
            continue;
        if (left.size() != right.size())
            return false;
        Matrix pairing(model.field, left.size(), right.size());
        const Field& F = model.field;
        for (std::size_t r = 0; r < left.size(); ++r)
            for (std::size_t c = 0; c < right.size(); ++c) {
                auto [z1, a1, b1] = left[r];
                auto [z2, a2, b2] = right[c];
                if (z1 != z2)
                    continue;
                Cohomology hi = ctx.scalar[z1].cx.cohomology(i);
                Cohomology hni = ctx.scalar[z1].cx.cohomology(vol.n - i);
                ExtBasis e0 = ext_basis(ctx, z1, 0);
                Vec cup = cup_class(F, ctx.subnerve[z1], ctx.scalar[z1], i, hi.reps[a1],
                                    vol.n - i, hni.reps[a2]);
                ExtClass lc{model.sectors[z1].modules[0], model.sectors[z1].modules[0], 0,
                            e0.reps[b1]};
                ExtClass rc{model.sectors[z1].modules[0], model.sectors[z1].modules[0], 0,
                            e0.reps[b2]};
                ExtClass prod = yoneda_product(lc, rc);
                Vec pc = ctx.vert[z1].class_coordinates(0, prod.cocycle);
                // t on the (n, 0) block of this sector
                Scalar acc(0);
                for (const auto& blk : lay.blocks) {
                    if (blk.sector != z1 || blk.i != vol.n || blk.j != 0)
                        continue;
                    for (std::size_t a3 = 0; a3 < blk.h_dim; ++a3)
                        for (std::size_t b3 = 0; b3 < blk.e_dim; ++b3)
                            acc = F.add(acc, F.mul(F.mul(cup[a3], pc[b3]),
                                                   vol.coeffs[blk.offset + a3 * blk.e_dim + b3]));
                }
                pairing.set(r, c, acc);
            }
        if (rank(pairing) != left.size())
            return false;
    }
    return true;
}

EquivalenciaReport equivalencia_check(const CechAlgebraModel& model,
                                      const std::vector<LocalOperator>& ops,
                                      const Vec& vol_scalar, bool wrong_sign)
{
    model.validate();
    for (const auto& op : ops)
        require(op.p == 0, Errc::invalid_argument, "equivalencia_check: needs p_j = 0 operators");
    int n = 0;
    for (const auto& op : ops)
        n += op.q;
    EquivalenciaReport rep;
    VolumeFunctional vf = locally_free_trace(model, n, vol_scalar);
    rep.via_spectral = correlate(model, ops, vf).value;

    // direct route: cup the Hom-valued Cech cochains, trace, pair with
    // vol_scalar
    const Field& F = model.field;
    const std::size_t L = static_cast<std::size_t>(n) + 2;
    rep.via_cup = Scalar(0);
    TopScalarLayout top = top_scalar_layout(model, n);
    for (std::size_t z = 0; z < model.sectors.size(); ++z) {
        Nerve sub = model.nerve.full_subcomplex(model.sectors[z].support);
        // cochains of module-map values per face, folded left to right
        std::vector<PairContext> ctxs;
        for (std::size_t t = 0; t < ops.size(); ++t)
            ctxs.emplace_back(model, t, t + 1, L);
        auto value_of = [&](std::size_t t, std::size_t fpos) {
            // module map F_{t-1} -> F_t at the face, from ext^0 coordinates
            const PairContext& c = ctxs[t];
            ExtBasis eb = ext_basis(c, z, 0);
            Vec coc(c.vert[z].dim(0), Scalar(0));
            for (std::size_t be = 0; be < eb.dim; ++be)
                if (ops[t].data[z][fpos][be] != 0)
                    for (std::size_t i = 0; i < coc.size(); ++i)
                        coc[i] = F.add(coc[i],
                                       F.mul(ops[t].data[z][fpos][be], eb.reps[be][i]));
            Matrix full = hom_from_generator_values(c.res[z], 0,
                                                    model.sectors[z].modules[t + 1], coc);
            // factor through the augmentation
            const AModule& src = model.sectors[z].modules[t];
            const AModule& dst = model.sectors[z].modules[t + 1];
            Matrix m(F, dst.dim(), src.dim());
            for (std::size_t c2 = 0; c2 < src.dim(); ++c2) {
                Vec e(src.dim(), Scalar(0));
                e[c2] = 1;
                auto w = solve(ctxs[t].res[z].aug, e);
                require(w.has_value(), Errc::internal, "equivalencia: aug solve");
                Vec img = full.apply(*w);
                for (std::size_t i2 = 0; i2 < dst.dim(); ++i2)
                    m.set(i2, c2, img[i2]);
            }
            return m;
        };
        // fold: cur[q-face position] = composed map over the front faces
        int qacc = ops[0].q;
        auto faces_acc = sub.faces_of_dim(qacc);
        std::vector<Matrix> cur;
        {
            auto f0 = sub.faces_of_dim(ops[0].q);
            for (std::size_t fp = 0; fp < f0.size(); ++fp)
                cur.push_back(value_of(0, fp));
        }
        for (std::size_t t = 1; t < ops.size(); ++t) {
            int q2 = ops[t].q;
            auto big = sub.faces_of_dim(qacc + q2);
            std::vector<Matrix> next;
            auto ffront = sub.faces_of_dim(qacc);
            auto fback = sub.faces_of_dim(q2);
            for (auto bid : big) {
                const auto& sigma = sub.faces[bid];
                std::vector<int> front(sigma.begin(), sigma.begin() + qacc + 1);
                std::vector<int> back(sigma.begin() + qacc, sigma.end());
                std::size_t fpos = 0, bpos = 0;
                for (std::size_t i2 = 0; i2 < ffront.size(); ++i2)
                    if (sub.faces[ffront[i2]] == front)
                        fpos = i2;
                for (std::size_t i2 = 0; i2 < fback.size(); ++i2)
                    if (sub.faces[fback[i2]] == back)
                        bpos = i2;
                Matrix prod = value_of(t, bpos) * cur[fpos];
                if (wrong_sign)
                    prod = -prod;
                next.push_back(std::move(prod));
            }
            cur = std::move(next);
            qacc += q2;
        }
        // trace per face, then the class against the product basis of
        // H^n((N_z) x A)
        auto iso = free_structure(model.sectors[z].modules[0]);
        require(iso.has_value(), Errc::not_free, "equivalencia_check: F_0 is not free");
        auto topfaces = sub.faces_of_dim(n);
        CechComplexData sc = cech_complex(NervePresheaf::constant(sub, F, model.alg->dim()));
        Vec cochain(sc.cx.dim(n), Scalar(0));
        for (std::size_t fp = 0; fp < topfaces.size(); ++fp) {
            Vec tr = module_trace(model.alg, *iso, cur[fp]);
            for (std::size_t c2 = 0; c2 < model.alg->dim(); ++c2)
                cochain[fp * model.alg->dim() + c2] = tr[c2];
        }
        // decompose against the product cocycles c_alpha (x) e_a
        CechComplexData s1 = cech_complex(NervePresheaf::constant(sub, F, 1));
        Cohomology hn = s1.cx.cohomology(n);
        const std::size_t na = model.alg->dim();
        std::vector<Vec> prodv;
        for (std::size_t al = 0; al < hn.dim; ++al)
            for (std::size_t c2 = 0; c2 < na; ++c2) {
                Vec v(sc.cx.dim(n), Scalar(0));
                for (std::size_t fp = 0; fp < topfaces.size(); ++fp)
                    v[fp * na + c2] = hn.reps[al][fp];
                prodv.push_back(std::move(v));
            }
        Matrix dprev = sc.cx.d(n - 1);
        Matrix sys(F, sc.cx.dim(n), prodv.size() + dprev.cols());
        for (std::size_t k2 = 0; k2 < prodv.size(); ++k2)
            for (std::size_t i2 = 0; i2 < prodv[k2].size(); ++i2)
                sys.set(i2, k2, prodv[k2][i2]);
        for (std::size_t c2 = 0; c2 < dprev.cols(); ++c2)
            for (std::size_t i2 = 0; i2 < dprev.rows(); ++i2)
                sys.set(i2, prodv.size() + c2, dprev(i2, c2));
        auto sol = solve(sys, cochain);
        require(sol.has_value(), Errc::internal, "equivalencia: cup class decomposition failed");
        const auto& tblk = top.blocks[z];
        for (std::size_t al = 0; al < hn.dim; ++al)
            for (std::size_t c2 = 0; c2 < na; ++c2)
                rep.via_cup =
                    F.add(rep.via_cup, F.mul((*sol)[al * na + c2],
                                             vol_scalar[tblk.offset + al * na + c2]));
    }
    rep.equal = rep.via_spectral == rep.via_cup;
    return rep;
}

std::vector<LocalOperator> operator_basis(const CechAlgebraModel& model, std::size_t slot, int p,
                                          int q)
{
    model.validate();
    require(slot >= 1 && slot <= model.slots, Errc::invalid_argument,
            "operator_basis: bad slot");
    const std::size_t L = static_cast<std::size_t>(p) + 2;
    PairContext ctx(model, slot - 1, slot, L);

    // build the ext presheaf over the full nerve and take H^q
    NervePresheaf pre;
    pre.nerve = model.nerve;
    pre.field = model.field;
    auto sectors_on = [&](std::size_t fid) {
        std::vector<std::size_t> zs;
        for (std::size_t z = 0; z < model.sectors.size(); ++z)
            if (subset_of(model.nerve.faces[fid], sorted(model.sectors[z].support)))
                zs.push_back(z);
        return zs;
    };
    std::vector<std::size_t> edims;
    for (std::size_t z = 0; z < model.sectors.size(); ++z)
        edims.push_back(ext_basis(ctx, z, p).dim);
    for (std::size_t i = 0; i < model.nerve.faces.size(); ++i) {
        std::size_t d = 0;
        for (auto z : sectors_on(i))
            d += edims[z];
        pre.dims.push_back(d);
    }
    for (std::size_t s = 0; s < model.nerve.faces.size(); ++s)
        for (std::size_t t = 0; t < model.nerve.faces.size(); ++t) {
            if (model.nerve.faces[s].size() + 1 != model.nerve.faces[t].size() ||
                !subset_of(model.nerve.faces[s], model.nerve.faces[t]))
                continue;
            auto zs = sectors_on(s), zt = sectors_on(t);
            Matrix r(model.field, pre.dims[t], pre.dims[s]);
            std::size_t ro = 0;
            for (auto z2 : zt) {
                std::size_t co = 0;
                for (auto z1 : zs) {
                    if (z1 == z2)
                        for (std::size_t i = 0; i < edims[z2]; ++i)
                            r.set(ro + i, co + i, Scalar(1));
                    co += edims[z1];
                }
                ro += edims[z2];
            }
            pre.restr.emplace(std::make_pair(s, t), std::move(r));
        }
    VertexSpace vs = vertex_space(pre, q);

    // unpack each basis class into per-sector per-face ext coordinates
    CechComplexData cd = cech_complex(pre);
    std::vector<LocalOperator> out;
    for (const auto& cls : vs.basis) {
        LocalOperator op;
        op.slot = slot;
        op.p = p;
        op.q = q;
        op.data.resize(model.sectors.size());
        for (std::size_t z = 0; z < model.sectors.size(); ++z) {
            auto sfaces = ctx.subnerve[z].faces_of_dim(q);
            op.data[z].assign(sfaces.size(), Vec(edims[z], Scalar(0)));
        }
        const auto& ids = cd.face_ids[static_cast<std::size_t>(q)];
        for (std::size_t fi = 0; fi < ids.size(); ++fi) {
            std::size_t off = cd.offsets[static_cast<std::size_t>(q)][fi];
            for (auto z : sectors_on(ids[fi])) {
                // position of this face inside the sector subnerve
                auto sfaces = ctx.subnerve[z].faces_of_dim(q);
                std::size_t fpos = 0;
                for (std::size_t i2 = 0; i2 < sfaces.size(); ++i2)
                    if (ctx.subnerve[z].faces[sfaces[i2]] == model.nerve.faces[ids[fi]])
                        fpos = i2;
                for (std::size_t b2 = 0; b2 < edims[z]; ++b2)
                    op.data[z][fpos][b2] = cls.cochain[off + b2];
                off += edims[z];
            }
        }
        out.push_back(std::move(op));
    }
    return out;
}

} // namespace homcat
