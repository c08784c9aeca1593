#include <doctest.h>

#include "homcat/koszul.hpp"
#include "homcat/verify.hpp"

using namespace homcat;

namespace {

const Field Q = Field::rationals();

Poly poly(std::vector<long> coeffs)
{
    Poly p;
    for (long c : coeffs)
        p.emplace_back(c);
    return p;
}

} // namespace

TEST_CASE("companion matrices and quotient modules")
{
    // n = 1, f = x: a single reduced point at the origin
    SeparatedSequence s1{Q, {poly({0, 1})}};
    EvalModule m1 = quotient_module(s1);
    CHECK(m1.dim == 1);
    CHECK(m1.var_actions[0].is_zero());

    // n = 2, f = (x(x-1), y): two reduced points
    SeparatedSequence s2{Q, {poly({0, -1, 1}), poly({0, 1})}};
    EvalModule m2 = quotient_module(s2);
    CHECK(m2.dim == 2);
    Matrix x1(Q, 2, 2);
    x1.set(1, 0, Scalar(1));
    x1.set(1, 1, Scalar(1));
    CHECK(m2.var_actions[0] == x1); // companion of x^2 - x
    CHECK(m2.var_actions[1].is_zero());

    // n = 1, f = x^2: fat point, nilpotent Jordan block
    SeparatedSequence sf{Q, {poly({0, 0, 1})}};
    EvalModule mf = quotient_module(sf);
    CHECK(mf.dim == 2);
    CHECK(!mf.var_actions[0].is_zero());
    CHECK((mf.var_actions[0] * mf.var_actions[0]).is_zero());
}

TEST_CASE("subsets in colexicographic order")
{
    auto s = subsets_colex(3, 2);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == std::vector<int>{1, 2});
    CHECK(s[1] == std::vector<int>{1, 3});
    CHECK(s[2] == std::vector<int>{2, 3});
    CHECK(subsets_colex(3, 0).size() == 1);
    CHECK(binomial(4, 2) == 6);
}

TEST_CASE("koszul_hom: zero differential on the quotient module")
{
    SeparatedSequence s{Q, {poly({0, -1, 1}), poly({0, 1})}};
    EvalModule oz = quotient_module(s);
    KoszulHomComplex k = koszul_hom(s, oz);
    for (int p = 0; p < 2; ++p)
        CHECK(k.cx.d(p).is_zero());
    // block counts per degree: C(n, p) blocks of dim(O_Z)
    for (std::size_t p = 0; p <= 2; ++p)
        CHECK(k.cx.dim(static_cast<int>(p)) == binomial(2, p) * oz.dim);
}

TEST_CASE("koszul_hom: nonzero differential on a fat evaluation module")
{
    // n = 1, f = x, module k[x]/(x^2): degree 0 -> 1 map is the action of x
    SeparatedSequence s{Q, {poly({0, 1})}};
    SeparatedSequence fat{Q, {poly({0, 0, 1})}};
    EvalModule m = quotient_module(fat);
    KoszulHomComplex k = koszul_hom(s, m);
    CHECK(k.cx.d(0) == m.var_actions[0]);
    CHECK(rank(k.cx.d(0)) == 1);
    // variable count mismatch is rejected
    SeparatedSequence s2{Q, {poly({0, 1}), poly({0, 1})}};
    CHECK_THROWS_AS(koszul_hom(s2, m), Error);
}

TEST_CASE("d0_ext_dims: spec examples")
{
    SeparatedSequence s2{Q, {poly({0, -1, 1}), poly({0, 1})}};
    CHECK(d0_ext_dims(s2) == std::vector<std::size_t>{2, 4, 2});

    SeparatedSequence s1{Q, {poly({0, 1})}};
    CHECK(d0_ext_dims(s1) == std::vector<std::size_t>{1, 1});

    SeparatedSequence s3{Q, {poly({0, 1}), poly({0, 1}), poly({0, 1})}};
    CHECK(d0_ext_dims(s3) == std::vector<std::size_t>{1, 3, 3, 1});

    // fat point: computed and reported, dims follow dim(O_Z) * C(n,p)
    SeparatedSequence sf{Q, {poly({0, 0, 1}), poly({0, 1})}};
    CHECK(d0_ext_dims(sf) == std::vector<std::size_t>{2, 4, 2});
}

TEST_CASE("koszul d^2 = 0 on arbitrary commuting modules")
{
    Rng rng(91);
    for (int i = 0; i < 15; ++i) {
        Field f = gen::random_field(rng);
        std::size_t n = 1 + rng.below(3);
        SeparatedSequence s{f, {}};
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t deg = 1 + rng.below(2);
            Poly p(deg + 1, Scalar(0));
            p[deg] = 1;
            for (std::size_t c = 0; c < deg; ++c)
                p[c] = gen::random_scalar(f, rng, 1);
            s.polys.push_back(std::move(p));
        }
        std::size_t d = 1 + rng.below(3);
        Matrix x = gen::random_matrix(f, rng, d, d, 1);
        std::vector<Matrix> actions;
        Matrix acc = Matrix::identity(f, d);
        for (std::size_t v = 0; v < n; ++v) {
            acc = acc * x; // powers of a single matrix commute
            actions.push_back(acc);
        }
        EvalModule m{f, d, actions};
        KoszulHomComplex k = koszul_hom(s, m);
        CHECK(k.cx.dd_is_zero());
    }
}

TEST_CASE("linear_roots and split_points")
{
    auto r = linear_roots(Q, poly({0, -1, 1})); // x(x-1)
    REQUIRE(r.size() == 2);
    CHECK(((r[0].first == 0 && r[1].first == 1) || (r[0].first == 1 && r[1].first == 0)));

    auto fat = linear_roots(Q, poly({0, 0, 1})); // x^2
    REQUIRE(fat.size() == 1);
    CHECK(fat[0].second == 2);

    CHECK_THROWS_AS(linear_roots(Q, poly({1, 0, 1})), Error); // x^2 + 1
    auto f5 = linear_roots(Field::prime_field(5), poly({1, 0, 1}));
    CHECK(f5.size() == 2); // roots 2 and 3 mod 5

    SeparatedSequence s{Q, {poly({0, -1, 1}), poly({0, 1})}};
    auto pts = split_points(s);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        CHECK(p.local.dim == 1);
        CHECK(p.root.size() == 2);
    }
    // rational non-integer roots are found as well: (2x - 1) monicized
    auto half = linear_roots(Q, Poly{Scalar(-1) / 2, Scalar(1)});
    REQUIRE(half.size() == 1);
    CHECK(half[0].first == Scalar(1) / 2);
}

TEST_CASE("euler characteristic of the koszul complex vanishes")
{
    SeparatedSequence s{Q, {poly({0, -1, 1}), poly({0, 1})}};
    std::vector<std::size_t> dims = d0_ext_dims(s);
    long chi = 0;
    for (std::size_t p = 0; p < dims.size(); ++p)
        chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(dims[p]);
    CHECK(chi == 0);
}
