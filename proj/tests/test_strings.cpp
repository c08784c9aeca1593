#include <doctest.h>

#include "homcat/strings.hpp"
#include "homcat/verify.hpp"

using namespace homcat;

namespace {

const Field Q = Field::rationals();

AModule trivial_module(const AlgebraPtr& alg)
{
    std::vector<Matrix> action;
    action.push_back(Matrix::identity(alg->field(), 1));
    for (std::size_t i = 1; i < alg->dim(); ++i)
        action.push_back(Matrix::zero(alg->field(), 1, 1));
    return AModule(alg, 1, action);
}

} // namespace

TEST_CASE("pullback_ext: spec examples")
{
    AlgebraPtr A = FinDimAlgebra::dual_numbers(Q);
    Extension1 s = gen::dual_numbers_nonsplit(Q);
    AModule k = s.sub;

    Extension1 pid = pullback_ext(s, ModuleMap::identity(k));
    CHECK(is_equivalent(pid, s));

    Extension1 p0 = pullback_ext(s, ModuleMap::zero(k, k));
    CHECK(is_equivalent(p0, split_extension(k, k)));

    // gamma = multiplication by c != 0 keeps the class nonzero
    Extension1 pc = pullback_ext(s, ModuleMap::make(k, k, Matrix::scalar(Q, 1, Scalar(7))));
    CHECK(!is_equivalent(pc, split_extension(k, k)));
    CHECK(!ext_class_is_zero(ext_class_of1(pc), 2));
}

TEST_CASE("pushout_ext: spec examples and (alpha S) gamma = alpha (S gamma)")
{
    Extension1 s = gen::dual_numbers_nonsplit(Q);
    AModule k = s.sub;
    CHECK(is_equivalent(pushout_ext(s, ModuleMap::identity(k)), s));
    CHECK(is_equivalent(pushout_ext(s, ModuleMap::zero(k, k)), split_extension(k, k)));

    Rng rng(121);
    for (int i = 0; i < 20; ++i) {
        Field f = gen::random_field(rng);
        AlgebraPtr alg = gen::random_algebra(f, rng);
        Extension1 u = gen::random_ses(alg, rng);
        // random endomorphisms of the end modules
        HomSpace ha = hom_space(u.sub, u.sub);
        HomSpace hg = hom_space(u.quo, u.quo);
        if (ha.dim == 0 || hg.dim == 0)
            continue;
        ModuleMap alpha = ModuleMap::make(u.sub, u.sub, ha.basis[rng.below(ha.dim)], false);
        ModuleMap gamma = ModuleMap::make(u.quo, u.quo, hg.basis[rng.below(hg.dim)], false);
        Extension1 lhs = pullback_ext(pushout_ext(u, alpha), gamma);
        Extension1 rhs = pushout_ext(pullback_ext(u, gamma), alpha);
        CHECK(is_equivalent(lhs, rhs));
    }
}

TEST_CASE("is_equivalent: spec examples")
{
    Extension1 s = gen::dual_numbers_nonsplit(Q);
    AModule k = s.sub;
    CHECK(is_equivalent(s, s));

    // split vs split with a different middle basis
    Extension1 sp = split_extension(k, k);
    Extension1 sp2 = sp;
    Matrix u(Q, 2, 2);
    u.set(0, 0, Scalar(1));
    u.set(1, 1, Scalar(1));
    u.set(0, 1, Scalar(0));
    u.set(1, 0, Scalar(0));
    // change the middle basis by a module automorphism (x acts 0 on k+k,
    // so any invertible matrix works)
    Matrix v(Q, 2, 2);
    v.set(0, 0, Scalar(1));
    v.set(1, 1, Scalar(1));
    v.set(0, 1, Scalar(1));
    sp2.inject = ModuleMap::make(sp.sub, sp.mid, v * sp.inject.mat, false);
    Matrix vinv = *inverse(v);
    sp2.project = ModuleMap::make(sp.mid, sp.quo, sp.project.mat * vinv, false);
    sp2.validate();
    CHECK(is_equivalent(sp, sp2));

    CHECK(!is_equivalent(sp, s));
}

TEST_CASE("baer_sum: zero element, torsion over F_2, class additivity")
{
    Extension1 s = gen::dual_numbers_nonsplit(Q);
    AModule k = s.sub;
    CHECK(is_equivalent(baer_sum(s, split_extension(k, k)), s));

    // over F_2 the nonsplit class is 2-torsion
    const Field F2 = Field::prime_field(2);
    Extension1 s2 = gen::dual_numbers_nonsplit(F2);
    CHECK(is_equivalent(baer_sum(s2, s2), split_extension(s2.sub, s2.quo)));

    // class additivity over the dual numbers, randomized scalings
    Rng rng(122);
    for (int i = 0; i < 15; ++i) {
        Scalar c1 = gen::random_scalar(Q, rng, 3);
        Scalar c2 = gen::random_scalar(Q, rng, 3);
        Extension1 e1 = pullback_ext(s, ModuleMap::make(k, k, Matrix::scalar(Q, 1, c1), false));
        Extension1 e2 = pullback_ext(s, ModuleMap::make(k, k, Matrix::scalar(Q, 1, c2), false));
        ExtClass sum_class = ext_class_of1(baer_sum(e1, e2));
        ExtClass expect = ext_class_add(ext_class_of1(e1), ext_class_of1(e2));
        CHECK(ext_classes_equal(sum_class, expect, 2));
    }
}

TEST_CASE("ext_class_of: split, generator, splice equals Yoneda square")
{
    Extension1 s = gen::dual_numbers_nonsplit(Q);
    AModule k = s.sub;
    CHECK(ext_class_is_zero(ext_class_of1(split_extension(k, k)), 2));
    ExtClass xi = ext_class_of1(s);
    CHECK(!ext_class_is_zero(xi, 2));

    // splicing the extension with itself gives the Yoneda square, but for
    // the splice the gluing objects must be literally equal modules; use
    // extension_from_cocycle to produce a 2-fold extension instead
    ExtClass xi2 = yoneda_product(xi, xi);
    ExtensionP twofold = extension_from_cocycle(xi2);
    CHECK(twofold.p() == 2);
    CHECK(ext_classes_equal(ext_class_of(twofold), xi2, 3));
    CHECK(!ext_class_is_zero(xi2, 3));
}

TEST_CASE("extension_from_cocycle: coboundary, canonical generator, round trips")
{
    AlgebraPtr A3 = FinDimAlgebra::truncated_polynomials(Q, 3);
    AlgebraPtr A2 = FinDimAlgebra::dual_numbers(Q);
    for (const AlgebraPtr& A : {A2, A3}) {
        AModule k = trivial_module(A);
        FreeResolution res = free_resolution(k, 3);
        CochainComplex ex = ext_cochain_complex(res, k, 3);
        // a coboundary produces the split class
        if (ex.dim(0) > 0) {
            Vec w(ex.dim(0), Scalar(0));
            w[0] = 1;
            Vec cob = ex.d(0).apply(w);
            bool nonzero = false;
            for (const auto& x : cob)
                nonzero = nonzero || x != 0;
            if (nonzero) {
                ExtensionP e = extension_from_cocycle(ExtClass{k, k, 1, cob});
                CHECK(ext_class_is_zero(ext_class_of(e), 2));
            }
        }
        // the canonical Ext^1 generator reproduces the nonsplit extension
        ExtGroup e1 = ext_group(k, k, 1, 3);
        REQUIRE(e1.dim == 1);
        ExtClass xi{k, k, 1, e1.cocycles[0]};
        ExtensionP e = extension_from_cocycle(xi);
        CHECK(e.p() == 1);
        CHECK(ext_classes_equal(ext_class_of(e), xi, 2));
        if (A == A2)
            CHECK(is_equivalent(e.splices[0], gen::dual_numbers_nonsplit(Q)));
        // round trip for p = 2 on random classes
        ExtGroup e2 = ext_group(k, k, 2, 4);
        Rng rng(123);
        for (int i = 0; i < 5 && e2.dim > 0; ++i) {
            Vec coc(ext_group(k, k, 2, 4).cocycles[0].size(), Scalar(0));
            for (std::size_t b = 0; b < e2.dim; ++b) {
                Scalar c = gen::random_scalar(Q, rng, 2);
                for (std::size_t t = 0; t < coc.size(); ++t)
                    coc[t] = Q.add(coc[t], Q.mul(c, e2.cocycles[b][t]));
            }
            ExtClass cls{k, k, 2, coc};
            ExtensionP ep = extension_from_cocycle(cls);
            CHECK(ep.p() == 2);
            CHECK(ext_classes_equal(ext_class_of(ep), cls, 3));
        }
    }
}

TEST_CASE("obstruction_extend: spec examples")
{
    Extension1 u = gen::dual_numbers_nonsplit(Q);
    AModule k = u.sub;
    // rho = id on the socle does not extend: every A -> k kills x
    ExtClass rho = ExtClass::of_map(ModuleMap::identity(k));
    Obstruction ob = obstruction_extend(rho, u);
    CHECK(!ob.vanishes);
    CHECK(!ext_class_is_zero(ob.value, 3));

    // rho = restriction of a map defined on C vanishes with a witness
    HomSpace hc = hom_space(u.mid, k);
    REQUIRE(hc.dim >= 1);
    ModuleMap phi = ModuleMap::make(u.mid, k, hc.basis[0], false);
    ModuleMap restricted = phi.compose_after(u.inject);
    Obstruction ob2 = obstruction_extend(ExtClass::of_map(restricted), u);
    CHECK(ob2.vanishes);
    REQUIRE(ob2.witness.has_value());
    // the witness restricts back to rho
    Horseshoe hs = horseshoe(u, 2);
    ExtClass back = ext_restrict(*ob2.witness, u, hs);
    CHECK(ext_classes_equal(back, ExtClass::of_map(restricted), 2));

    // split u: everything extends
    Extension1 sp = split_extension(k, k);
    Obstruction ob3 = obstruction_extend(rho, sp);
    CHECK(ob3.vanishes);
}

TEST_CASE("obstruction_lift: spec examples")
{
    Extension1 u = gen::dual_numbers_nonsplit(Q);
    AModule k = u.sub;
    // tau = id: A -> k has no module section
    ExtClass tau = ExtClass::of_map(ModuleMap::identity(k));
    Obstruction ob = obstruction_lift(tau, u);
    CHECK(!ob.vanishes);

    // tau factoring through C lifts
    HomSpace hk = hom_space(k, u.mid);
    REQUIRE(hk.dim >= 1);
    ModuleMap into_c = ModuleMap::make(k, u.mid, hk.basis[0], false);
    ModuleMap factored = u.project.compose_after(into_c);
    Obstruction ob2 = obstruction_lift(ExtClass::of_map(factored), u);
    CHECK(ob2.vanishes);
    REQUIRE(ob2.witness.has_value());
    CHECK(ext_classes_equal(ext_pushforward(*ob2.witness, u), ExtClass::of_map(factored), 2));

    Obstruction ob3 = obstruction_lift(tau, split_extension(k, k));
    CHECK(ob3.vanishes);
}

TEST_CASE("les_report: spec examples")
{
    Extension1 u = gen::dual_numbers_nonsplit(Q);
    AModule k = u.sub;
    AModule freeA = AModule::free_module(u.sub.algebra(), 1);

    // split: exact with zero connecting maps
    StringLesReport sp = les_report(split_extension(k, k), k, LesSide::covariant_from_f, 3);
    CHECK(sp.exact);

    // contravariant dual-numbers fixture: 0 -> k -> k -> k -> k -> 0
    StringLesReport rep = les_report(u, k, LesSide::contravariant_to_g, 3);
    CHECK(rep.exact);
    CHECK(rep.les.dims[1] == 1);
    CHECK(rep.les.dims[2] == 1);
    CHECK(rep.les.dims[3] == 1);
    CHECK(rep.les.dims[4] == 1);
    CHECK(rep.les.dims[5] == 0);
    CHECK(rank(rep.les.maps[3]) == 1); // iso connecting map

    // covariant from a free module: positive-degree columns vanish
    StringLesReport fr = les_report(u, freeA, LesSide::covariant_from_f, 3);
    CHECK(fr.exact);
    CHECK(fr.free_case_checked);
    CHECK(fr.free_case_ok);
}

TEST_CASE("horseshoe resolutions are exact")
{
    Rng rng(124);
    for (int i = 0; i < 12; ++i) {
        Field f = gen::random_field(rng);
        AlgebraPtr alg = gen::random_algebra(f, rng);
        Extension1 u = gen::random_ses(alg, rng);
        Horseshoe hs = horseshoe(u, 3);
        CHECK(hs.res.exact_through(3));
        CHECK(rank(hs.res.aug) == u.mid.dim());
    }
}

TEST_CASE("obstruction vanishing matches witness existence on random instances")
{
    Rng rng(125);
    for (int i = 0; i < 15; ++i) {
        Field f = i % 2 == 0 ? Field::prime_field(2) : Field::prime_field(3);
        AlgebraPtr alg = gen::random_algebra(f, rng);
        Extension1 u = gen::random_ses(alg, rng);
        AModule g = gen::random_module(alg, rng);
        ExtGroup eb = ext_group(u.sub, g, 0, 2);
        if (eb.dim == 0)
            continue;
        ExtClass rho{u.sub, g, 0, eb.cocycles[rng.below(eb.dim)]};
        Obstruction ob = obstruction_extend(rho, u);
        // brute force: enumerate module maps C -> G and compare restrictions
        HomSpace all = hom_space(u.mid, g);
        bool found = false;
        std::size_t combos = 1;
        for (std::size_t t = 0; t < all.dim; ++t)
            combos *= f.characteristic();
        for (std::size_t code = 0; code < combos && !found; ++code) {
            std::size_t rest = code;
            Matrix m = Matrix::zero(f, g.dim(), u.mid.dim());
            for (std::size_t t = 0; t < all.dim; ++t) {
                std::size_t c = rest % f.characteristic();
                rest /= f.characteristic();
                if (c)
                    m = m + all.basis[t].scaled(Scalar(static_cast<long>(c)));
            }
            ModuleMap phi = ModuleMap::make(u.mid, g, m, false);
            ModuleMap restr = phi.compose_after(u.inject);
            found = ext_classes_equal(ExtClass::of_map(restr), rho, 2);
        }
        CHECK(ob.vanishes == found);
        if (ob.vanishes)
            CHECK(ob.witness.has_value());
    }
}
