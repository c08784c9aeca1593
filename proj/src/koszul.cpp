#include "homcat/koszul.hpp"

#include <algorithm>

namespace homcat {

Scalar poly_eval(const Field& f, const Poly& p, const Scalar& x)
{
    Scalar acc(0);
    for (std::size_t i = p.size(); i-- > 0;)
        acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

Matrix poly_eval_matrix(const Field& f, const Poly& p, const Matrix& x)
{
    Matrix acc = Matrix::zero(f, x.rows(), x.cols());
    for (std::size_t i = p.size(); i-- > 0;)
        acc = acc * x + Matrix::scalar(f, x.rows(), p[i]);
    return acc;
}

bool poly_is_monic(const Poly& p)
{
    return !p.empty() && p.back() == 1;
}

Matrix companion_matrix(const Field& f, const Poly& p)
{
    require(poly_is_monic(p) && p.size() >= 2, Errc::invalid_argument,
            "companion matrix needs a monic nonconstant polynomial");
    const std::size_t d = p.size() - 1;
    Matrix c(f, d, d);
    for (std::size_t j = 0; j + 1 < d; ++j)
        c.set(j + 1, j, Scalar(1)); // x * x^j = x^{j+1}
    for (std::size_t i = 0; i < d; ++i)
        c.set(i, d - 1, f.neg(p[i])); // x * x^{d-1} = -a_0 - ... - a_{d-1} x^{d-1}
    return c;
}

void SeparatedSequence::validate() const
{
    require(!polys.empty(), Errc::invalid_argument, "empty separated sequence");
    for (const auto& p : polys)
        require(poly_is_monic(p) && p.size() >= 2, Errc::invalid_argument,
                "separated sequence polynomials must be monic and nonconstant");
}

void EvalModule::validate() const
{
    for (const auto& x : var_actions)
        require(x.rows() == dim && x.cols() == dim && x.field() == field, Errc::shape_mismatch,
                "eval module: action shape mismatch");
    for (std::size_t i = 0; i < var_actions.size(); ++i)
        for (std::size_t j = i + 1; j < var_actions.size(); ++j)
            require(var_actions[i] * var_actions[j] == var_actions[j] * var_actions[i],
                    Errc::invalid_argument, "eval module: variable actions do not commute");
}

EvalModule quotient_module(const SeparatedSequence& seq)
{
    seq.validate();
    const Field& F = seq.field;
    const std::size_t n = seq.n();
    std::vector<std::size_t> degs;
    std::size_t dim = 1;
    for (const auto& p : seq.polys) {
        degs.push_back(p.size() - 1);
        dim *= p.size() - 1;
    }
    // basis index = idx_1 + d_1*(idx_2 + d_2*(...)), variable 1 fastest
    std::vector<Matrix> actions;
    for (std::size_t v = 0; v < n; ++v) {
        Matrix comp = companion_matrix(F, seq.polys[v]);
        Matrix X(F, dim, dim);
        for (std::size_t idx = 0; idx < dim; ++idx) {
            // decode mixed-radix index
            std::size_t rest = idx, iv = 0, stride = 1;
            for (std::size_t w = 0; w < n; ++w) {
                std::size_t digit = rest % degs[w];
                rest /= degs[w];
                if (w == v)
                    iv = digit;
                if (w < v)
                    stride *= degs[w];
            }
            for (std::size_t r = 0; r < degs[v]; ++r) {
                if (comp(r, iv) == 0)
                    continue;
                std::size_t target = idx - iv * stride + r * stride;
                X.set(target, idx, comp(r, iv));
            }
        }
        actions.push_back(std::move(X));
    }
    EvalModule m{F, dim, std::move(actions)};
    m.validate();
    return m;
}

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return r;
}

std::vector<std::vector<int>> subsets_colex(std::size_t n, std::size_t p)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // colex: S < T iff max(S xor T) in T; generate recursively by largest element
    struct Gen {
        std::size_t p;
        std::vector<std::vector<int>>* out;
        std::vector<int>* cur;
        void operator()(int max_elt, std::size_t need)
        {
            if (need == 0) {
                std::vector<int> s(*cur);
                std::sort(s.begin(), s.end());
                out->push_back(std::move(s));
                return;
            }
            for (int top = static_cast<int>(need); top <= max_elt; ++top) {
                cur->push_back(top);
                (*this)(top - 1, need - 1);
                cur->pop_back();
            }
        }
    };
    Gen g{p, &out, &cur};
    g(static_cast<int>(n), p);
    return out;
}

KoszulHomComplex koszul_hom(const SeparatedSequence& seq, const EvalModule& m)
{
    seq.validate();
    m.validate();
    require(m.n() == seq.n(), Errc::variable_count_mismatch,
            "koszul_hom: module variable count differs from the sequence");
    const Field& F = seq.field;
    const std::size_t n = seq.n();
    const std::size_t md = m.dim;

    // f_i evaluated at the variable actions
    std::vector<Matrix> fx;
    for (std::size_t i = 0; i < n; ++i)
        fx.push_back(poly_eval_matrix(F, seq.polys[i], m.var_actions[i]));

    std::vector<std::vector<std::vector<int>>> basis;
    std::vector<std::size_t> dims;
    for (std::size_t p = 0; p <= n; ++p) {
        basis.push_back(subsets_colex(n, p));
        dims.push_back(basis.back().size() * md);
    }

    std::vector<Matrix> diffs;
    for (std::size_t p = 0; p < n; ++p) {
        const auto& src = basis[p];
        const auto& dst = basis[p + 1];
        Matrix d(F, dims[p + 1], dims[p]);
        for (std::size_t si = 0; si < dst.size(); ++si) {
            const auto& S = dst[si]; // ascending
            for (std::size_t j = 0; j < S.size(); ++j) {
                // T = S minus its j-th smallest element, sign (-1)^{j-1} with
                // 1-based j; contribution f_{i_j}(X) from block T into S
                std::vector<int> T;
                for (std::size_t t = 0; t < S.size(); ++t)
                    if (t != j)
                        T.push_back(S[t]);
                auto it = std::find(src.begin(), src.end(), T);
                std::size_t ti = static_cast<std::size_t>(it - src.begin());
                const Scalar sgn = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
                const Matrix& blk = fx[static_cast<std::size_t>(S[j]) - 1];
                for (std::size_t r = 0; r < md; ++r)
                    for (std::size_t c = 0; c < md; ++c)
                        if (blk(r, c) != 0)
                            d.set(si * md + r, ti * md + c, F.mul(sgn, blk(r, c)));
            }
        }
        diffs.push_back(std::move(d));
    }
    CochainComplex cx(F, 0, std::move(dims), std::move(diffs));
    return KoszulHomComplex{std::move(cx), n, md, std::move(basis)};
}

std::vector<std::size_t> d0_ext_dims(const SeparatedSequence& seq)
{
    EvalModule oz = quotient_module(seq);
    KoszulHomComplex k = koszul_hom(seq, oz);
    std::vector<std::size_t> dims;
    for (std::size_t p = 0; p <= seq.n(); ++p)
        dims.push_back(k.cx.cohomology(static_cast<int>(p)).dim);
    return dims;
}

std::vector<std::pair<Scalar, std::size_t>> linear_roots(const Field& f, const Poly& p)
{
    require(poly_is_monic(p), Errc::invalid_argument, "linear_roots: polynomial must be monic");
    Poly rem = p;
    std::vector<std::pair<Scalar, std::size_t>> roots;
    auto divide_out = [&](const Scalar& r) {
        // synthetic division of monic rem by (x - r)
        Poly q(rem.size() - 1, Scalar(0));
        Scalar carry(0);
        for (std::size_t i = rem.size(); i-- > 1;) {
            carry = (i == rem.size() - 1) ? rem[i] : f.add(rem[i], f.mul(carry, r));
            q[i - 1] = carry;
        }
        rem = q;
    };
    auto try_root = [&](const Scalar& r) {
        std::size_t mult = 0;
        while (rem.size() >= 2 && poly_eval(f, rem, r) == 0) {
            divide_out(r);
            ++mult;
        }
        if (mult)
            roots.emplace_back(f.reduce(r), mult);
    };
    if (!f.is_rationals()) {
        for (unsigned long v = 0; v < f.characteristic() && rem.size() >= 2; ++v)
            try_root(Scalar(v));
    } else {
        // rational root scan: clear denominators, candidates p/q with
        // p | constant term and q | leading coefficient
        while (rem.size() >= 2) {
            mpz_class lcm(1);
            for (const auto& c : rem)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
            std::vector<mpz_class> zc;
            for (const auto& c : rem)
                zc.push_back(mpz_class(c * Scalar(lcm)));
            // strip trailing zero roots first
            if (zc.front() == 0) {
                try_root(Scalar(0));
                continue;
            }
            mpz_class a0 = abs(zc.front()), an = abs(zc.back());
            bool found = false;
            for (mpz_class d1(1); d1 <= a0 && !found; ++d1) {
                if (a0 % d1 != 0)
                    continue;
                for (mpz_class d2(1); d2 <= an && !found; ++d2) {
                    if (an % d2 != 0)
                        continue;
                    for (int s = 0; s < 2 && !found; ++s) {
                        Scalar cand = Scalar(s == 0 ? d1 : -d1) / Scalar(d2);
                        if (poly_eval(f, rem, cand) == 0) {
                            try_root(cand);
                            found = true;
                        }
                    }
                }
            }
            if (!found)
                break;
        }
    }
    require(rem.size() == 1, Errc::not_split,
            "polynomial does not split into linear factors over the field");
    return roots;
}

std::vector<PointLocal> split_points(const SeparatedSequence& seq)
{
    seq.validate();
    const Field& F = seq.field;
    std::vector<std::vector<std::pair<Scalar, std::size_t>>> roots;
    for (const auto& p : seq.polys)
        roots.push_back(linear_roots(F, p));
    std::vector<PointLocal> points;
    std::vector<std::size_t> idx(seq.n(), 0);
    while (true) {
        Vec root;
        SeparatedSequence local_seq{F, {}};
        for (std::size_t v = 0; v < seq.n(); ++v) {
            const auto& [r, e] = roots[v][idx[v]];
            root.push_back(r);
            // (x - r)^e, binomial expansion
            Poly fac{F.neg(r), Scalar(1)};
            Poly acc{Scalar(1)};
            for (std::size_t t = 0; t < e; ++t) {
                Poly next(acc.size() + 1, Scalar(0));
                for (std::size_t i = 0; i < acc.size(); ++i) {
                    next[i] = F.add(next[i], F.mul(acc[i], fac[0]));
                    next[i + 1] = F.add(next[i + 1], acc[i]);
                }
                acc = next;
            }
            local_seq.polys.push_back(acc);
        }
        points.push_back(PointLocal{std::move(root), quotient_module(local_seq)});
        // advance the mixed-radix counter
        std::size_t v = 0;
        while (v < seq.n()) {
            if (++idx[v] < roots[v].size())
                break;
            idx[v] = 0;
            ++v;
        }
        if (v == seq.n())
            break;
    }
    return points;
}

} // namespace homcat
