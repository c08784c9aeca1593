#include "homcat/strings.hpp"

#include <algorithm>

namespace homcat {

void Extension1::validate() const
{
    inject.validate();
    project.validate();
    require(inject.src.same_as(sub) && inject.dst.same_as(mid), Errc::shape_mismatch,
            "extension: inject endpoints");
    require(project.src.same_as(mid) && project.dst.same_as(quo), Errc::shape_mismatch,
            "extension: project endpoints");
    require(sub.dim() + quo.dim() == mid.dim(), Errc::not_exact, "extension: dims do not add");
    require(rank(inject.mat) == sub.dim(), Errc::not_exact, "extension: inject not injective");
    require(rank(project.mat) == quo.dim(), Errc::not_exact, "extension: project not surjective");
    require((project.mat * inject.mat).is_zero(), Errc::not_exact,
            "extension: project o inject != 0");
}

Extension1 split_extension(const AModule& g, const AModule& f)
{
    AModule mid = AModule::direct_sum(g, f);
    const Field& F = g.field();
    Matrix inj(F, mid.dim(), g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i)
        inj.set(i, i, Scalar(1));
    Matrix prj(F, f.dim(), mid.dim());
    for (std::size_t i = 0; i < f.dim(); ++i)
        prj.set(i, g.dim() + i, Scalar(1));
    return Extension1{g, mid, f, ModuleMap::make(g, mid, std::move(inj), false),
                      ModuleMap::make(mid, f, std::move(prj), false)};
}

Extension1 pullback_ext(const Extension1& s, const ModuleMap& gamma)
{
    require(gamma.dst.same_as(s.quo), Errc::endpoint_mismatch,
            "pullback: gamma must land in the quotient");
    const Field& F = s.sub.field();
    AModule W = AModule::direct_sum(gamma.src, s.mid);
    // kernel of (gamma, -project) : F' (+) H -> F
    Matrix m = gamma.mat.hcat(-s.project.mat);
    Subspace K = kernel_basis(m);
    SubmoduleData md = submodule(W, K);
    // inject' : G -> middle, g |-> (0, inject g)
    Matrix inj(F, md.mod.dim(), s.sub.dim());
    for (std::size_t j = 0; j < s.sub.dim(); ++j) {
        Vec e(s.sub.dim(), Scalar(0));
        e[j] = 1;
        Vec w(W.dim(), Scalar(0));
        Vec ig = s.inject.mat.apply(e);
        for (std::size_t i = 0; i < s.mid.dim(); ++i)
            w[gamma.src.dim() + i] = ig[i];
        auto c = K.coordinates(w);
        require(c.has_value(), Errc::internal, "pullback: inject image outside the fiber product");
        for (std::size_t i = 0; i < md.mod.dim(); ++i)
            inj.set(i, j, (*c)[i]);
    }
    // project' : middle -> F', the first coordinates of the fiber product
    Matrix prj(F, gamma.src.dim(), md.mod.dim());
    for (std::size_t k = 0; k < md.mod.dim(); ++k)
        for (std::size_t i = 0; i < gamma.src.dim(); ++i)
            prj.set(i, k, K.basis()(k, i));
    Extension1 out{s.sub, md.mod, gamma.src, ModuleMap::make(s.sub, md.mod, std::move(inj), false),
                   ModuleMap::make(md.mod, gamma.src, std::move(prj), false)};
    out.validate();
    return out;
}

Extension1 pushout_ext(const Extension1& s, const ModuleMap& alpha)
{
    require(alpha.src.same_as(s.sub), Errc::endpoint_mismatch,
            "pushout: alpha must start at the sub-object");
    const Field& F = s.sub.field();
    AModule W = AModule::direct_sum(s.mid, alpha.dst);
    // image of (inject, -alpha) : G -> H (+) G'
    Matrix m = s.inject.mat.vcat(-alpha.mat);
    Subspace I = image_space(m);
    QuotientData qd = quotient_module_of(W, I);
    // inject' : G' -> W/I
    Matrix ginc(F, W.dim(), alpha.dst.dim());
    for (std::size_t i = 0; i < alpha.dst.dim(); ++i)
        ginc.set(s.mid.dim() + i, i, Scalar(1));
    Matrix inj = qd.proj.mat * ginc;
    // project' : W/I -> F, induced by (project, 0)
    Matrix wf = s.project.mat.hcat(Matrix::zero(F, s.quo.dim(), alpha.dst.dim()));
    Matrix prj = induced_on_quotient(wf, I, Subspace::zero(F, s.quo.dim()));
    Extension1 out{alpha.dst, qd.mod, s.quo,
                   ModuleMap::make(alpha.dst, qd.mod, std::move(inj), false),
                   ModuleMap::make(qd.mod, s.quo, std::move(prj), false)};
    out.validate();
    return out;
}

bool is_equivalent(const Extension1& s, const Extension1& t)
{
    require(s.sub.same_as(t.sub) && s.quo.same_as(t.quo), Errc::endpoint_mismatch,
            "is_equivalent: extensions have different end modules");
    if (s.mid.dim() != t.mid.dim())
        return false;
    const Field& F = s.sub.field();
    const std::size_t h = s.mid.dim(), h2 = t.mid.dim();
    const std::size_t na = s.sub.algebra()->dim();
    // unknown beta : s.mid -> t.mid, col-major vec
    std::vector<Matrix> lhs;
    std::vector<Vec> rhs;
    // beta o inject_s = inject_t
    lhs.push_back(kron(s.inject.mat.transpose(), Matrix::identity(F, h2)));
    {
        Vec v;
        for (std::size_t j = 0; j < s.sub.dim(); ++j)
            for (std::size_t i = 0; i < h2; ++i)
                v.push_back(t.inject.mat(i, j));
        rhs.push_back(std::move(v));
    }
    // project_t o beta = project_s
    lhs.push_back(kron(Matrix::identity(F, h), t.project.mat));
    {
        Vec v;
        for (std::size_t j = 0; j < h; ++j)
            for (std::size_t i = 0; i < s.quo.dim(); ++i)
                v.push_back(s.project.mat(i, j));
        rhs.push_back(std::move(v));
    }
    // equivariance
    for (std::size_t a = 0; a < na; ++a) {
        lhs.push_back(kron(s.mid.action(a).transpose(), Matrix::identity(F, h2)) -
                      kron(Matrix::identity(F, h), t.mid.action(a)));
        rhs.push_back(Vec(h * h2, Scalar(0)));
    }
    std::size_t rows = 0;
    for (const auto& b : lhs)
        rows += b.rows();
    Matrix sys(F, rows, h * h2);
    Vec b(rows, Scalar(0));
    std::size_t off = 0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        for (std::size_t i = 0; i < lhs[k].rows(); ++i) {
            for (std::size_t j = 0; j < h * h2; ++j)
                if (lhs[k](i, j) != 0)
                    sys.set(off + i, j, lhs[k](i, j));
            b[off + i] = rhs[k][i];
        }
        off += lhs[k].rows();
    }
    auto sol = solve(sys, b);
    if (!sol.has_value())
        return false;
    Matrix beta(F, h2, h);
    for (std::size_t j = 0; j < h; ++j)
        for (std::size_t i = 0; i < h2; ++i)
            beta.set(i, j, (*sol)[j * h2 + i]);
    require(rank(beta) == h, Errc::internal, "five lemma violated: comparison map not invertible");
    return true;
}

Extension1 baer_sum(const Extension1& s, const Extension1& t)
{
    require(s.sub.same_as(t.sub) && s.quo.same_as(t.quo), Errc::endpoint_mismatch,
            "baer_sum: extensions have different end modules");
    const Field& F = s.sub.field();
    const AModule& G = s.sub;
    const AModule& Fm = s.quo;
    // direct sum extension over F(+)F with sub G(+)G
    AModule GG = AModule::direct_sum(G, G);
    AModule HH = AModule::direct_sum(s.mid, t.mid);
    AModule FF = AModule::direct_sum(Fm, Fm);
    BlockBuilder bi(F, {s.mid.dim(), t.mid.dim()}, {G.dim(), G.dim()});
    bi.place(0, 0, s.inject.mat);
    bi.place(1, 1, t.inject.mat);
    BlockBuilder bp(F, {Fm.dim(), Fm.dim()}, {s.mid.dim(), t.mid.dim()});
    bp.place(0, 0, s.project.mat);
    bp.place(1, 1, t.project.mat);
    Extension1 sum{GG, HH, FF, ModuleMap::make(GG, HH, bi.result(), false),
                   ModuleMap::make(HH, FF, bp.result(), false)};
    // diagonal and codiagonal
    Matrix diag = Matrix::identity(F, Fm.dim()).vcat(Matrix::identity(F, Fm.dim()));
    Matrix codiag = Matrix::identity(F, G.dim()).hcat(Matrix::identity(F, G.dim()));
    Extension1 pb = pullback_ext(sum, ModuleMap::make(Fm, FF, std::move(diag), false));
    return pushout_ext(pb, ModuleMap::make(GG, G, std::move(codiag), false));
}

void ExtensionP::validate() const
{
    require(!splices.empty(), Errc::invalid_argument, "extension splice: empty");
    for (const auto& s : splices)
        s.validate();
    for (std::size_t i = 0; i + 1 < splices.size(); ++i)
        require(splices[i].quo.same_as(splices[i + 1].sub), Errc::endpoint_mismatch,
                "extension splice: adjacent gluing modules differ");
}

namespace {

// SES of ext cochain complexes Hom(P(F), -) applied to 0 -> A -> B -> C -> 0
struct ExtSes {
    CochainComplex exA, exB, exC;
    ShortExactSeq ses;
};

ExtSes ext_ses_covariant(const FreeResolution& resF, const ModuleMap& inject,
                         const ModuleMap& project, std::size_t L)
{
    const Field& F = resF.module.field();
    CochainComplex exA = ext_cochain_complex(resF, inject.src, L);
    CochainComplex exB = ext_cochain_complex(resF, inject.dst, L);
    CochainComplex exC = ext_cochain_complex(resF, project.dst, L);
    std::vector<Matrix> ic, pc;
    for (std::size_t q = 0; q <= L; ++q) {
        ic.push_back(kron(Matrix::identity(F, resF.ranks[q]), inject.mat));
        pc.push_back(kron(Matrix::identity(F, resF.ranks[q]), project.mat));
    }
    ChainMap mi = ChainMap::make(exA, exB, 0, std::move(ic));
    ChainMap mp = ChainMap::make(exB, exC, 0, std::move(pc));
    return ExtSes{std::move(exA), std::move(exB), std::move(exC), ShortExactSeq{mi, mp}};
}

ExtClass apply_connecting(const ExtSes& es, const ExtClass& cls, const AModule& target_g)
{
    const int j = static_cast<int>(cls.k);
    std::map<int, Matrix> delta = connecting(es.ses);
    Vec coords = es.exC.class_coordinates(j, cls.cocycle);
    Vec img = delta.at(j).apply(coords);
    Cohomology hb = es.exA.cohomology(j + 1);
    Vec cocycle(es.exA.dim(j + 1), Scalar(0));
    const Field& F = cls.f.field();
    for (std::size_t i = 0; i < hb.dim; ++i)
        if (img[i] != 0)
            for (std::size_t t = 0; t < cocycle.size(); ++t)
                cocycle[t] = F.add(cocycle[t], F.mul(img[i], hb.reps[i][t]));
    return ExtClass{cls.f, target_g, cls.k + 1, std::move(cocycle)};
}

} // namespace

ExtClass ext_class_of1(const Extension1& e)
{
    return ext_class_of(ExtensionP{{e}});
}

ExtClass ext_class_of(const ExtensionP& e)
{
    e.validate();
    const AModule& Fm = e.f_module();
    const std::size_t p = e.p();
    const std::size_t L = p + 1;
    FreeResolution resF = free_resolution(Fm, L);
    ExtClass cls = ExtClass::identity(Fm);
    for (std::size_t i = e.p(); i-- > 0;) {
        const Extension1& s = e.splices[i];
        ExtSes es = ext_ses_covariant(resF, s.inject, s.project, L);
        cls = apply_connecting(es, cls, s.sub);
    }
    return cls;
}

ExtensionP extension_from_cocycle(const ExtClass& fc)
{
    const std::size_t p = fc.k;
    require(p >= 1, Errc::invalid_argument, "extension_from_cocycle: need degree >= 1");
    const Field& F = fc.f.field();
    FreeResolution res = free_resolution(fc.f, p + 1);
    CochainComplex ex = ext_cochain_complex(res, fc.g, p + 1);
    {
        Vec img = ex.d(static_cast<int>(p)).apply(fc.cocycle);
        for (const auto& x : img)
            require(x == 0, Errc::not_a_cocycle, "extension_from_cocycle: not a cocycle");
    }

    // K_i = im(d_i) inside P_{i-1}, as a module, for i = 1..p
    std::vector<SubmoduleData> K;
    for (std::size_t i = 1; i <= p; ++i) {
        AModule Pi1 = res.term(i - 1);
        K.push_back(submodule(Pi1, image_space(res.diffs[i - 1])));
    }
    // corestriction cor_i : P_i -> K_i of d_i
    auto corestriction = [&](std::size_t i) {
        AModule Pi = res.term(i);
        const SubmoduleData& Ki = K[i - 1];
        Matrix cor(F, Ki.mod.dim(), Pi.dim());
        for (std::size_t j = 0; j < Pi.dim(); ++j) {
            Vec e(Pi.dim(), Scalar(0));
            e[j] = 1;
            Vec c = *Ki.space.coordinates(res.diffs[i - 1].apply(e));
            for (std::size_t r = 0; r < Ki.mod.dim(); ++r)
                cor.set(r, j, c[r]);
        }
        return ModuleMap::make(Pi, Ki.mod, std::move(cor), false);
    };

    // fhat : K_p -> G induced by the cocycle
    Matrix full = hom_from_generator_values(res, p, fc.g, fc.cocycle);
    const SubmoduleData& Kp = K[p - 1];
    Matrix fhat(F, fc.g.dim(), Kp.mod.dim());
    for (std::size_t r = 0; r < Kp.mod.dim(); ++r) {
        Vec v = Kp.space.basis().row(r);
        auto w = solve(res.diffs[p - 1], v);
        require(w.has_value(), Errc::internal, "extension_from_cocycle: preimage failed");
        Vec img = full.apply(*w);
        for (std::size_t i = 0; i < fc.g.dim(); ++i)
            fhat.set(i, r, img[i]);
    }
    ModuleMap fhat_map = ModuleMap::make(Kp.mod, fc.g, std::move(fhat));

    std::vector<Extension1> splices;
    // top splice: pushout of 0 -> K_p -> P_{p-1} -> (K_{p-1} or F) -> 0
    {
        AModule Pp1 = res.term(p - 1);
        ModuleMap proj = (p == 1)
                             ? ModuleMap::make(Pp1, fc.f, res.aug, false)
                             : corestriction(p - 1);
        Extension1 top{Kp.mod, Pp1, proj.dst, Kp.incl, proj};
        top.validate();
        splices.push_back(pushout_ext(top, fhat_map));
    }
    // lower splices: 0 -> K_i -> P_{i-1} -> K_{i-1} -> 0 down to F
    for (std::size_t i = p; i-- > 1;) {
        AModule Pi1 = res.term(i - 1);
        ModuleMap proj =
            (i == 1) ? ModuleMap::make(Pi1, fc.f, res.aug, false) : corestriction(i - 1);
        splices.push_back(Extension1{K[i - 1].mod, Pi1, proj.dst, K[i - 1].incl, proj});
    }
    ExtensionP out{std::move(splices)};
    out.validate();
    return out;
}

Horseshoe horseshoe(const Extension1& u, std::size_t length)
{
    const Field& F = u.sub.field();
    FreeResolution resB = free_resolution(u.sub, length);
    FreeResolution resD = free_resolution(u.quo, length);
    const std::size_t na = u.sub.algebra()->dim();

    FreeResolution res;
    res.module = u.mid;
    for (std::size_t q = 0; q <= length; ++q)
        res.ranks.push_back(resB.ranks[q] + resD.ranks[q]);

    // sigma_0 : P(D)_0 -> C lifting the augmentation of D through project
    Vec flat0;
    for (std::size_t t = 0; t < resD.ranks[0]; ++t) {
        Vec target = resD.aug.apply(free_generator(u.quo.algebra(), resD.ranks[0], t));
        auto w = solve(u.project.mat, target);
        require(w.has_value(), Errc::internal, "horseshoe: augmentation lift failed");
        flat0.insert(flat0.end(), w->begin(), w->end());
    }
    Matrix sigma0 = hom_from_generator_values(resD, 0, u.mid, flat0);
    res.aug = (u.inject.mat * resB.aug).hcat(sigma0);

    std::vector<Matrix> tau; // tau_q : P(D)_q -> P(B)_{q-1}
    for (std::size_t q = 1; q <= length; ++q) {
        AModule Bq1 = resB.term(q - 1);
        Matrix target = (q == 1) ? Matrix(u.inject.mat * resB.aug) : resB.diffs[q - 2];
        Matrix rhs = (q == 1) ? Matrix(-(sigma0 * resD.diffs[0]))
                              : Matrix(-(tau[q - 2] * resD.diffs[q - 1]));
        // q = 1: inject o aug_B o tau_1 = -sigma0 o d^D_1 (solve in C)
        // q >= 2: d^B_{q-1} o tau_q = -tau_{q-1} o d^D_q (solve in P(B)_{q-2})
        Vec flat;
        for (std::size_t t = 0; t < resD.ranks[q]; ++t) {
            Vec r = rhs.apply(free_generator(u.quo.algebra(), resD.ranks[q], t));
            auto w = solve(target, r);
            require(w.has_value(), Errc::internal, "horseshoe: tau lift failed");
            flat.insert(flat.end(), w->begin(), w->end());
        }
        tau.push_back(hom_from_generator_values(resD, q, Bq1, flat));
        // d^C_q = [[d^B_q, tau_q],[0, d^D_q]]
        BlockBuilder bb(F,
                        {resB.ranks[q - 1] * na, resD.ranks[q - 1] * na},
                        {resB.ranks[q] * na, resD.ranks[q] * na});
        bb.place(0, 0, resB.diffs[q - 1]);
        bb.place(0, 1, tau[q - 1]);
        bb.place(1, 1, resD.diffs[q - 1]);
        res.diffs.push_back(bb.result());
    }
    return Horseshoe{std::move(res), resB.ranks, resD.ranks};
}

namespace {

// contravariant SES of ext complexes over a horseshoe:
// 0 -> Hom(P(D),G) -> Hom(P(C),G) -> Hom(P(B),G) -> 0
struct ContraSes {
    CochainComplex exD, exC, exB;
    ShortExactSeq ses;
    FreeResolution resB, resD;
};

ContraSes ext_ses_contravariant(const Extension1& u, const Horseshoe& hs, const AModule& g,
                                std::size_t L)
{
    const Field& F = g.field();
    FreeResolution resB = free_resolution(u.sub, L);
    FreeResolution resD = free_resolution(u.quo, L);
    CochainComplex exB = ext_cochain_complex(resB, g, L);
    CochainComplex exC = ext_cochain_complex(hs.res, g, L);
    CochainComplex exD = ext_cochain_complex(resD, g, L);
    std::vector<Matrix> cor, restr;
    for (std::size_t q = 0; q <= L; ++q) {
        const std::size_t rb = hs.ranks_b[q], rd = hs.ranks_d[q], gd = g.dim();
        Matrix c(F, (rb + rd) * gd, rd * gd); // s |-> s o projection
        for (std::size_t t = 0; t < rd * gd; ++t)
            c.set(rb * gd + t, t, Scalar(1));
        cor.push_back(std::move(c));
        Matrix r(F, rb * gd, (rb + rd) * gd); // s |-> s o inclusion
        for (std::size_t t = 0; t < rb * gd; ++t)
            r.set(t, t, Scalar(1));
        restr.push_back(std::move(r));
    }
    ChainMap mi = ChainMap::make(exD, exC, 0, std::move(cor));
    ChainMap mp = ChainMap::make(exC, exB, 0, std::move(restr));
    return ContraSes{std::move(exD), std::move(exC), std::move(exB), ShortExactSeq{mi, mp},
                     std::move(resB), std::move(resD)};
}

Vec cocycle_from_class_coords(const CochainComplex& cx, int degree, const Vec& coords)
{
    Cohomology h = cx.cohomology(degree);
    Vec out(cx.dim(degree), Scalar(0));
    const Field& F = cx.field();
    for (std::size_t i = 0; i < h.dim; ++i)
        if (coords[i] != 0)
            for (std::size_t t = 0; t < out.size(); ++t)
                out[t] = F.add(out[t], F.mul(coords[i], h.reps[i][t]));
    return out;
}

} // namespace

Obstruction obstruction_extend(const ExtClass& rho, const Extension1& u)
{
    require(rho.f.same_as(u.sub), Errc::endpoint_mismatch,
            "obstruction_extend: class does not start at the sub-object");
    const std::size_t p = rho.k;
    const std::size_t L = p + 2;
    Horseshoe hs = horseshoe(u, L);
    ContraSes cs = ext_ses_contravariant(u, hs, rho.g, L);
    std::map<int, Matrix> delta = connecting(cs.ses);
    Vec coords = cs.exB.class_coordinates(static_cast<int>(p), rho.cocycle);
    Vec img = delta.at(static_cast<int>(p)).apply(coords);
    Obstruction out;
    out.value = ExtClass{u.quo, rho.g, p + 1,
                         cocycle_from_class_coords(cs.exD, static_cast<int>(p + 1), img)};
    out.vanishes = true;
    for (const auto& x : img)
        out.vanishes = out.vanishes && x == 0;
    if (out.vanishes) {
        // witness sigma in Hom(P(C)_p, G): d sigma = 0, sigma o incl = rho + d eta
        const Field& F = rho.g.field();
        const std::size_t nc = cs.exC.dim(static_cast<int>(p));
        const std::size_t nb1 = p >= 1 ? cs.exB.dim(static_cast<int>(p - 1)) : 0;
        Matrix dC = cs.exC.d(static_cast<int>(p));
        Matrix restr = cs.ses.proj.at(static_cast<int>(p));
        Matrix dB = p >= 1 ? cs.exB.d(static_cast<int>(p - 1))
                           : Matrix::zero(F, cs.exB.dim(0), 0);
        Matrix sys(F, dC.rows() + restr.rows(), nc + nb1);
        Vec rhs(dC.rows() + restr.rows(), Scalar(0));
        for (std::size_t i = 0; i < dC.rows(); ++i)
            for (std::size_t j = 0; j < nc; ++j)
                sys.set(i, j, dC(i, j));
        for (std::size_t i = 0; i < restr.rows(); ++i) {
            for (std::size_t j = 0; j < nc; ++j)
                sys.set(dC.rows() + i, j, restr(i, j));
            for (std::size_t j = 0; j < nb1; ++j)
                sys.set(dC.rows() + i, nc + j, F.neg(dB(i, j)));
            rhs[dC.rows() + i] = rho.cocycle[i];
        }
        auto sol = solve(sys, rhs);
        require(sol.has_value(), Errc::internal, "obstruction_extend: witness solve failed");
        Vec sigma(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(nc));
        // transport to the memoized resolution of C
        FreeResolution memoC = free_resolution(u.mid, L);
        std::vector<Matrix> lam = lift_identity(hs.res, memoC, p);
        Matrix full = hom_from_generator_values(hs.res, p, rho.g, sigma);
        out.witness = ExtClass{u.mid, rho.g, p, generator_values(memoC, p, rho.g, full * lam[p])};
    }
    return out;
}

Obstruction obstruction_lift(const ExtClass& tau, const Extension1& u)
{
    require(tau.g.same_as(u.quo), Errc::endpoint_mismatch,
            "obstruction_lift: class does not end at the quotient object");
    const std::size_t p = tau.k;
    const std::size_t L = p + 2;
    FreeResolution resF = free_resolution(tau.f, L);
    ExtSes es = ext_ses_covariant(resF, u.inject, u.project, L);
    // es: exA = Hom(P,B), exB = Hom(P,C), exC = Hom(P,D)
    std::map<int, Matrix> delta = connecting(es.ses);
    Vec coords = es.exC.class_coordinates(static_cast<int>(p), tau.cocycle);
    Vec img = delta.at(static_cast<int>(p)).apply(coords);
    Obstruction out;
    out.value = ExtClass{tau.f, u.sub, p + 1,
                         cocycle_from_class_coords(es.exA, static_cast<int>(p + 1), img)};
    out.vanishes = true;
    for (const auto& x : img)
        out.vanishes = out.vanishes && x == 0;
    if (out.vanishes) {
        // witness sigma in Hom(P_p, C): d sigma = 0, project o sigma = tau + d eta
        const Field& F = tau.f.field();
        const std::size_t nc = es.exB.dim(static_cast<int>(p));
        const std::size_t nd1 = p >= 1 ? es.exC.dim(static_cast<int>(p - 1)) : 0;
        Matrix dC = es.exB.d(static_cast<int>(p));
        Matrix push = es.ses.proj.at(static_cast<int>(p));
        Matrix dD = p >= 1 ? es.exC.d(static_cast<int>(p - 1))
                           : Matrix::zero(F, es.exC.dim(0), 0);
        Matrix sys(F, dC.rows() + push.rows(), nc + nd1);
        Vec rhs(dC.rows() + push.rows(), Scalar(0));
        for (std::size_t i = 0; i < dC.rows(); ++i)
            for (std::size_t j = 0; j < nc; ++j)
                sys.set(i, j, dC(i, j));
        for (std::size_t i = 0; i < push.rows(); ++i) {
            for (std::size_t j = 0; j < nc; ++j)
                sys.set(dC.rows() + i, j, push(i, j));
            for (std::size_t j = 0; j < nd1; ++j)
                sys.set(dC.rows() + i, nc + j, F.neg(dD(i, j)));
            rhs[dC.rows() + i] = tau.cocycle[i];
        }
        auto sol = solve(sys, rhs);
        require(sol.has_value(), Errc::internal, "obstruction_lift: witness solve failed");
        Vec sigma(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(nc));
        out.witness = ExtClass{tau.f, u.mid, p, std::move(sigma)};
    }
    return out;
}

StringLesReport les_report(const Extension1& u, const AModule& other, LesSide side,
                           std::size_t length)
{
    StringLesReport rep;
    if (side == LesSide::covariant_from_f) {
        FreeResolution resF = free_resolution(other, length);
        ExtSes es = ext_ses_covariant(resF, u.inject, u.project, length);
        rep.les = les_of_ses(es.ses);
    } else {
        Horseshoe hs = horseshoe(u, length);
        ContraSes cs = ext_ses_contravariant(u, hs, other, length);
        rep.les = les_of_ses(cs.ses);
    }
    rep.exact = rep.les.exact;
    auto isfree = free_structure(other);
    if (isfree.has_value() && side == LesSide::covariant_from_f) {
        rep.free_case_checked = true;
        rep.free_case_ok = true;
        for (const AModule* x : {&u.sub, &u.mid, &u.quo}) {
            for (std::size_t k = 1; k + 1 <= length; ++k)
                rep.free_case_ok =
                    rep.free_case_ok && ext_group(other, *x, k, length).dim == 0;
            rep.free_case_ok = rep.free_case_ok &&
                               ext_group(other, *x, 0, length).dim == hom_space(other, *x).dim;
        }
    }
    return rep;
}

ExtClass ext_restrict(const ExtClass& c_class, const Extension1& u, const Horseshoe& hs)
{
    require(c_class.f.same_as(u.mid), Errc::endpoint_mismatch,
            "ext_restrict: class must start at the middle object");
    const std::size_t p = c_class.k;
    const std::size_t L = p + 2;
    // transport from the memo resolution of C to the horseshoe, then restrict
    FreeResolution memoC = free_resolution(u.mid, L);
    std::vector<Matrix> lam = lift_identity(memoC, hs.res, p); // horseshoe -> memo terms
    Matrix full = hom_from_generator_values(memoC, p, c_class.g, c_class.cocycle);
    Matrix on_horseshoe = full * lam[p];
    // precompose with the inclusion P(B)_p -> P(C)_p (B-gens first)
    FreeResolution resB = free_resolution(u.sub, L);
    const std::size_t na = u.sub.algebra()->dim();
    Matrix incl(u.sub.field(), (hs.ranks_b[p] + hs.ranks_d[p]) * na, hs.ranks_b[p] * na);
    for (std::size_t t = 0; t < hs.ranks_b[p] * na; ++t)
        incl.set(t, t, Scalar(1));
    return ExtClass{u.sub, c_class.g, p,
                    generator_values(resB, p, c_class.g, on_horseshoe * incl)};
}

ExtClass ext_pushforward(const ExtClass& f_to_c, const Extension1& u)
{
    require(f_to_c.g.same_as(u.mid), Errc::endpoint_mismatch,
            "ext_pushforward: class must end at the middle object");
    FreeResolution resF = free_resolution(f_to_c.f, f_to_c.k + 1);
    Matrix push = kron(Matrix::identity(u.sub.field(), resF.ranks[f_to_c.k]), u.project.mat);
    return ExtClass{f_to_c.f, u.quo, f_to_c.k, push.apply(f_to_c.cocycle)};
}

} // namespace homcat
