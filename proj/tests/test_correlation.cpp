#include <doctest.h>

#include "homcat/correlation.hpp"
#include "homcat/verify.hpp"

using namespace homcat;

namespace {

const Field Q = Field::rationals();

LocalOperator scaled(const Field& f, const LocalOperator& op, const Scalar& c)
{
    LocalOperator out = op;
    for (auto& per : out.data)
        for (auto& v : per)
            for (auto& x : v)
                x = f.mul(x, c);
    return out;
}

} // namespace

TEST_CASE("single-point model: trace of the identity endomorphism")
{
    AlgebraPtr alg = FinDimAlgebra::field_algebra(Q);
    AModule f2 = AModule::free_module(alg, 2);
    CechAlgebraModel model = gen::point_model(alg, 1, {f2, f2});
    // t = Phi o trace with Phi(1) = 1
    TopScalarLayout top = top_scalar_layout(model, 0);
    REQUIRE(top.total == 1);
    VolumeFunctional vf = locally_free_trace(model, 0, Vec{Scalar(1)});

    // the basis of End(k^2) classes; their traces sum to tr(id) = 2
    auto basis = operator_basis(model, 1, 0, 0);
    REQUIRE(basis.size() == 4);
    Scalar found(0);
    for (const auto& op : basis) {
        CorrelationReport r = correlate(model, {op}, vf);
        found = Q.add(found, r.value);
    }
    // the four elementary-matrix classes have traces summing to tr(e11) +
    // tr(e12) + tr(e21) + tr(e22) = 2 in some order
    CHECK(found == Scalar(2));

    // build the identity operator as a linear combination using equivalencia
    // route values: sum of the two diagonal basis elements
    std::vector<LocalOperator> diag;
    for (const auto& op : basis) {
        CorrelationReport r = correlate(model, {op}, vf);
        if (r.value == Scalar(1))
            diag.push_back(op);
    }
    REQUIRE(diag.size() == 2);
    LocalOperator id_op = diag[0];
    for (std::size_t z = 0; z < id_op.data.size(); ++z)
        for (std::size_t fp = 0; fp < id_op.data[z].size(); ++fp)
            for (std::size_t t = 0; t < id_op.data[z][fp].size(); ++t)
                id_op.data[z][fp][t] =
                    Q.add(id_op.data[z][fp][t], diag[1].data[z][fp][t]);
    CHECK(correlate(model, {id_op}, vf).value == Scalar(2));
}

TEST_CASE("single-point model: nilpotent e12 squared has zero correlator")
{
    AlgebraPtr alg = FinDimAlgebra::field_algebra(Q);
    AModule f2 = AModule::free_module(alg, 2);
    CechAlgebraModel model = gen::point_model(alg, 2, {f2, f2, f2});
    VolumeFunctional vf = locally_free_trace(model, 0, Vec{Scalar(1)});
    auto basis1 = operator_basis(model, 1, 0, 0);
    auto basis2 = operator_basis(model, 2, 0, 0);
    REQUIRE(basis1.size() == 4);
    // classify the off-diagonal nilpotents by single-operator traces in a
    // k = 1 model
    std::vector<std::size_t> offdiag;
    CechAlgebraModel model1 = gen::point_model(alg, 1, {f2, f2});
    VolumeFunctional vf1 = locally_free_trace(model1, 0, Vec{Scalar(1)});
    auto b1 = operator_basis(model1, 1, 0, 0);
    for (std::size_t i = 0; i < b1.size(); ++i)
        if (correlate(model1, {b1[i]}, vf1).value == 0)
            offdiag.push_back(i);
    REQUIRE(offdiag.size() == 2);
    // e12 in both slots of the k = 2 model: trace(e12 e12) = 0
    LocalOperator a1 = basis1[offdiag[0]];
    LocalOperator a2 = basis2[offdiag[0]];
    CHECK(correlate(model, {a1, a2}, vf).value == 0);
    // e12 then e21 pairs to 1
    LocalOperator a2b = basis2[offdiag[1]];
    Scalar v = correlate(model, {a1, a2b}, vf).value;
    CHECK(v == Scalar(1));
}

TEST_CASE("correlate is multilinear and kills dying classes")
{
    AlgebraPtr alg = FinDimAlgebra::field_algebra(Q);
    AModule f2 = AModule::free_module(alg, 2);
    CechAlgebraModel model = gen::point_model(alg, 2, {f2, f2, f2});
    VolumeFunctional vf = locally_free_trace(model, 0, Vec{Scalar(1)});
    auto basis1 = operator_basis(model, 1, 0, 0);
    auto basis2 = operator_basis(model, 2, 0, 0);
    LocalOperator a = basis1[1], b = basis2[2];
    Scalar base = correlate(model, {a, b}, vf).value;
    CHECK(correlate(model, {scaled(Q, a, Scalar(5)), b}, vf).value == Q.mul(base, Scalar(5)));
    CHECK(correlate(model, {a, scaled(Q, b, Scalar(-3))}, vf).value ==
          Q.mul(base, Scalar(-3)));

    // dying class via the synthetic fixture: result is zero with a status
    LocalOperator dying = a;
    dying.p = 1;
    dying.q = 0;
    dying.dc_override = gen::dying_class_fixture(Q);
    dying.dc_cocycle = Vec{Scalar(1)};
    VolumeFunctional vf1;
    vf1.n = 1;
    vf1.coeffs.assign(string_space_layout(model, 0, 2, 1).total, Scalar(1));
    CorrelationReport rep = correlate(model, {dying, b}, vf1);
    CHECK(rep.any_died);
    CHECK(rep.value == 0);
    CHECK(rep.statuses[0] == "dies(2)");

    // degree and endpoint mismatches are rejected
    CHECK_THROWS_AS(correlate(model, {a, b}, vf1), Error);
}

TEST_CASE("equivalencia_check: point and triangle models, negative control")
{
    AlgebraPtr dual = FinDimAlgebra::dual_numbers(Q);
    std::vector<AModule> mods = {AModule::free_module(dual, 1), AModule::free_module(dual, 1),
                                 AModule::free_module(dual, 1)};
    CechAlgebraModel tri = gen::triangle_model(dual, 2, mods);
    auto b1 = operator_basis(tri, 1, 0, 0);
    auto b2 = operator_basis(tri, 2, 0, 1);
    REQUIRE(!b1.empty());
    REQUIRE(!b2.empty());
    TopScalarLayout top = top_scalar_layout(tri, 1);
    Vec vol(top.total, Scalar(0));
    for (std::size_t t = 0; t < top.total; ++t)
        vol[t] = Scalar(static_cast<long>(t + 2));
    std::vector<LocalOperator> ops = {b1[0], b2[0]};
    EquivalenciaReport rep = equivalencia_check(tri, ops, vol);
    CHECK(rep.equal);
    if (rep.via_cup != 0) {
        EquivalenciaReport bad = equivalencia_check(tri, ops, vol, true);
        CHECK(!bad.equal);
    }
}

TEST_CASE("free modules have no positive-ghost-number vertex operators")
{
    AlgebraPtr dual = FinDimAlgebra::dual_numbers(Q);
    std::vector<AModule> mods = {AModule::free_module(dual, 2), AModule::free_module(dual, 2)};
    CechAlgebraModel model = gen::point_model(dual, 1, mods);
    for (int p = 1; p <= 2; ++p)
        CHECK(operator_basis(model, 1, p, 0).empty());
}

TEST_CASE("locally_free_trace: r copies of a top class, traceless classes, NotFree")
{
    AlgebraPtr alg = FinDimAlgebra::field_algebra(Q);
    for (std::size_t r : {1ul, 2ul, 3ul}) {
        AModule fr = AModule::free_module(alg, r);
        CechAlgebraModel model = gen::point_model(alg, 1, {fr, fr});
        VolumeFunctional vf = locally_free_trace(model, 0, Vec{Scalar(1)});
        // identity operator: sum of the diagonal elementary classes
        auto basis = operator_basis(model, 1, 0, 0);
        LocalOperator id_op = basis[0];
        for (auto& per : id_op.data)
            for (auto& v : per)
                for (auto& x : v)
                    x = 0;
        for (const auto& op : basis) {
            CorrelationReport rep = correlate(model, {op}, vf);
            if (rep.value == Scalar(1))
                for (std::size_t z = 0; z < id_op.data.size(); ++z)
                    for (std::size_t fp = 0; fp < id_op.data[z].size(); ++fp)
                        for (std::size_t t = 0; t < id_op.data[z][fp].size(); ++t)
                            id_op.data[z][fp][t] =
                                Q.add(id_op.data[z][fp][t], op.data[z][fp][t]);
        }
        CHECK(correlate(model, {id_op}, vf).value == Scalar(static_cast<long>(r)));
        CHECK(volume_nondegenerate_on_free(model, vf));
    }
    // a non-free F_0 is rejected
    AlgebraPtr dual = FinDimAlgebra::dual_numbers(Q);
    std::vector<Matrix> ka = {Matrix::identity(Q, 1), Matrix::zero(Q, 1, 1)};
    AModule k(dual, 1, ka);
    CechAlgebraModel bad = gen::point_model(dual, 1, {k, k});
    CHECK_THROWS_AS(locally_free_trace(bad, 0, Vec{Scalar(1)}), Error);
}
