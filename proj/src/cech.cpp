#include "homcat/cech.hpp"

#include <algorithm>
#include <set>

namespace homcat {

namespace {

bool face_less(const std::vector<int>& a, const std::vector<int>& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

Nerve Nerve::closure(std::size_t vertex_count, std::vector<std::vector<int>> generating)
{
    std::set<std::vector<int>> all;
    for (auto f : generating) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        // all nonempty subsets
        const std::size_t n = f.size();
        for (std::size_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> s;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                    s.push_back(f[i]);
            all.insert(std::move(s));
        }
    }
    Nerve nv;
    nv.vertex_count = vertex_count;
    nv.faces.assign(all.begin(), all.end());
    std::sort(nv.faces.begin(), nv.faces.end(), face_less);
    nv.validate();
    return nv;
}

void Nerve::validate() const
{
    std::set<std::vector<int>> seen;
    for (const auto& f : faces) {
        require(!f.empty(), Errc::invalid_argument, "nerve: empty face");
        require(std::is_sorted(f.begin(), f.end()), Errc::invalid_argument,
                "nerve: face vertices must be ascending");
        require(std::adjacent_find(f.begin(), f.end()) == f.end(), Errc::invalid_argument,
                "nerve: repeated vertex in a face");
        require(f.front() >= 0 && f.back() < static_cast<int>(vertex_count),
                Errc::invalid_argument, "nerve: vertex out of range");
        require(seen.insert(f).second, Errc::invalid_argument, "nerve: duplicate face");
    }
    for (const auto& f : faces)
        if (f.size() >= 2)
            for (std::size_t j = 0; j < f.size(); ++j) {
                std::vector<int> sub;
                for (std::size_t t = 0; t < f.size(); ++t)
                    if (t != j)
                        sub.push_back(f[t]);
                require(seen.count(sub) > 0, Errc::invalid_argument,
                        "nerve: not downward closed");
            }
}

int Nerve::max_dim() const
{
    int d = -1;
    for (const auto& f : faces)
        d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
}

std::vector<std::size_t> Nerve::faces_of_dim(int q) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (static_cast<int>(faces[i].size()) == q + 1)
            out.push_back(i);
    return out; // global order is (size, lex), so these are lex-sorted
}

long Nerve::face_index(const std::vector<int>& f) const
{
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i] == f)
            return static_cast<long>(i);
    return -1;
}

Nerve Nerve::full_subcomplex(const std::vector<int>& vertices) const
{
    std::set<int> vs(vertices.begin(), vertices.end());
    Nerve nv;
    nv.vertex_count = vertex_count;
    for (const auto& f : faces) {
        bool in = true;
        for (int v : f)
            in = in && vs.count(v) > 0;
        if (in)
            nv.faces.push_back(f);
    }
    return nv;
}

NervePresheaf NervePresheaf::constant(const Nerve& n, Field f, std::size_t dim)
{
    NervePresheaf p;
    p.nerve = n;
    p.field = f;
    p.dims.assign(n.faces.size(), dim);
    Matrix id = Matrix::identity(f, dim);
    for (std::size_t s = 0; s < n.faces.size(); ++s)
        for (std::size_t t = 0; t < n.faces.size(); ++t)
            if (n.faces[s].size() + 1 == n.faces[t].size() &&
                subset_of(n.faces[s], n.faces[t]))
                p.restr.emplace(std::make_pair(s, t), id);
    return p;
}

const Matrix& NervePresheaf::restriction(std::size_t from, std::size_t to) const
{
    auto it = restr.find({from, to});
    require(it != restr.end(), Errc::shape_mismatch, "presheaf: missing restriction");
    return it->second;
}

Matrix NervePresheaf::restriction_chain(std::size_t from, std::size_t to) const
{
    const auto& a = nerve.faces[from];
    const auto& b = nerve.faces[to];
    require(subset_of(a, b), Errc::invalid_argument, "restriction_chain: not a face inclusion");
    if (a == b)
        return Matrix::identity(field, dims[from]);
    // add missing vertices in ascending order
    std::vector<int> cur = a;
    Matrix acc = Matrix::identity(field, dims[from]);
    std::size_t cur_id = from;
    for (int v : b) {
        if (std::binary_search(cur.begin(), cur.end(), v))
            continue;
        std::vector<int> next = cur;
        next.insert(std::lower_bound(next.begin(), next.end(), v), v);
        long nid = nerve.face_index(next);
        require(nid >= 0, Errc::invalid_argument, "restriction_chain: missing face");
        acc = restriction(cur_id, static_cast<std::size_t>(nid)) * acc;
        cur = std::move(next);
        cur_id = static_cast<std::size_t>(nid);
    }
    return acc;
}

void NervePresheaf::validate() const
{
    nerve.validate();
    require(dims.size() == nerve.faces.size(), Errc::shape_mismatch,
            "presheaf: dimension per face required");
    for (const auto& [key, m] : restr) {
        require(m.rows() == dims[key.second] && m.cols() == dims[key.first],
                Errc::shape_mismatch, "presheaf: restriction shape mismatch");
        require(m.field() == field, Errc::field_mismatch, "presheaf: field mismatch");
    }
    // every codim-1 inclusion must be present
    for (std::size_t s = 0; s < nerve.faces.size(); ++s)
        for (std::size_t t = 0; t < nerve.faces.size(); ++t)
            if (nerve.faces[s].size() + 1 == nerve.faces[t].size() &&
                subset_of(nerve.faces[s], nerve.faces[t]))
                require(restr.count({s, t}) > 0, Errc::shape_mismatch,
                        "presheaf: missing codim-1 restriction");
    // functoriality on codim-2 squares
    for (std::size_t s = 0; s < nerve.faces.size(); ++s)
        for (std::size_t t = 0; t < nerve.faces.size(); ++t) {
            if (nerve.faces[s].size() + 2 != nerve.faces[t].size() ||
                !subset_of(nerve.faces[s], nerve.faces[t]))
                continue;
            std::vector<Matrix> routes;
            for (std::size_t m = 0; m < nerve.faces.size(); ++m)
                if (nerve.faces[m].size() == nerve.faces[s].size() + 1 &&
                    subset_of(nerve.faces[s], nerve.faces[m]) &&
                    subset_of(nerve.faces[m], nerve.faces[t]))
                    routes.push_back(restriction(m, t) * restriction(s, m));
            for (std::size_t i = 1; i < routes.size(); ++i)
                require(routes[i] == routes[0], Errc::functoriality_violation,
                        "presheaf restriction square does not commute");
        }
}

NervePresheaf skyscraper_presheaf(const Nerve& n, Field f,
                                  const std::vector<std::vector<int>>& point_opens,
                                  std::size_t stalk_dim)
{
    for (const auto& po : point_opens)
        require(!po.empty(), Errc::invalid_argument,
                "skyscraper: each point needs at least one vertex open");
    NervePresheaf p;
    p.nerve = n;
    p.field = f;
    auto points_on = [&](std::size_t face_id) {
        std::vector<std::size_t> pts;
        for (std::size_t z = 0; z < point_opens.size(); ++z) {
            std::vector<int> po = point_opens[z];
            std::sort(po.begin(), po.end());
            if (subset_of(n.faces[face_id], po))
                pts.push_back(z);
        }
        return pts;
    };
    for (std::size_t i = 0; i < n.faces.size(); ++i)
        p.dims.push_back(points_on(i).size() * stalk_dim);
    for (std::size_t s = 0; s < n.faces.size(); ++s)
        for (std::size_t t = 0; t < n.faces.size(); ++t) {
            if (n.faces[s].size() + 1 != n.faces[t].size() || !subset_of(n.faces[s], n.faces[t]))
                continue;
            auto ps = points_on(s), pt = points_on(t);
            Matrix r(f, p.dims[t], p.dims[s]);
            for (std::size_t bi = 0; bi < pt.size(); ++bi) {
                auto it = std::find(ps.begin(), ps.end(), pt[bi]);
                std::size_t si = static_cast<std::size_t>(it - ps.begin());
                for (std::size_t d = 0; d < stalk_dim; ++d)
                    r.set(bi * stalk_dim + d, si * stalk_dim + d, Scalar(1));
            }
            p.restr.emplace(std::make_pair(s, t), std::move(r));
        }
    return p;
}

CechComplexData cech_complex(const NervePresheaf& p)
{
    p.validate();
    const Nerve& n = p.nerve;
    const Field& F = p.field;
    const int maxq = n.max_dim();
    CechComplexData out;
    std::vector<std::size_t> dims;
    for (int q = 0; q <= maxq; ++q) {
        auto ids = n.faces_of_dim(q);
        std::vector<std::size_t> offs;
        std::size_t off = 0;
        for (auto id : ids) {
            offs.push_back(off);
            off += p.dims[id];
        }
        out.offsets.push_back(offs);
        out.face_ids.push_back(ids);
        dims.push_back(off);
    }
    std::vector<Matrix> diffs;
    for (int q = 0; q < maxq; ++q) {
        Matrix d(F, dims[static_cast<std::size_t>(q + 1)], dims[static_cast<std::size_t>(q)]);
        const auto& src_ids = out.face_ids[static_cast<std::size_t>(q)];
        const auto& dst_ids = out.face_ids[static_cast<std::size_t>(q + 1)];
        for (std::size_t ti = 0; ti < dst_ids.size(); ++ti) {
            const auto& sigma = n.faces[dst_ids[ti]];
            for (std::size_t j = 0; j < sigma.size(); ++j) {
                std::vector<int> tau;
                for (std::size_t t = 0; t < sigma.size(); ++t)
                    if (t != j)
                        tau.push_back(sigma[t]);
                long tid = n.face_index(tau);
                auto it = std::find(src_ids.begin(), src_ids.end(), static_cast<std::size_t>(tid));
                std::size_t si = static_cast<std::size_t>(it - src_ids.begin());
                const Matrix& r = p.restriction(static_cast<std::size_t>(tid), dst_ids[ti]);
                const Scalar sgn = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
                for (std::size_t a = 0; a < r.rows(); ++a)
                    for (std::size_t b = 0; b < r.cols(); ++b)
                        if (r(a, b) != 0)
                            d.set(out.offsets[static_cast<std::size_t>(q + 1)][ti] + a,
                                  out.offsets[static_cast<std::size_t>(q)][si] + b,
                                  F.add(d(out.offsets[static_cast<std::size_t>(q + 1)][ti] + a,
                                          out.offsets[static_cast<std::size_t>(q)][si] + b),
                                        F.mul(sgn, r(a, b))));
            }
        }
        diffs.push_back(std::move(d));
    }
    out.cx = CochainComplex(F, 0, std::move(dims), std::move(diffs));
    return out;
}

VertexSpace vertex_space(const NervePresheaf& p, int q)
{
    VertexSpace v;
    if (q < 0 || q > p.nerve.max_dim())
        return v;
    CechComplexData data = cech_complex(p);
    Cohomology h = data.cx.cohomology(q);
    v.dim = h.dim;
    for (const auto& rep : h.reps)
        v.basis.push_back(CechClass{q, rep});
    return v;
}

ComplexPresheaf ComplexPresheaf::constant(const Nerve& n, const CochainComplex& c)
{
    ComplexPresheaf cp;
    cp.nerve = n;
    cp.field = c.field();
    cp.cx.assign(n.faces.size(), c);
    std::vector<Matrix> id_comps;
    for (int d = c.lo(); d <= c.hi(); ++d)
        id_comps.push_back(Matrix::identity(c.field(), c.dim(d)));
    for (std::size_t s = 0; s < n.faces.size(); ++s)
        for (std::size_t t = 0; t < n.faces.size(); ++t)
            if (n.faces[s].size() + 1 == n.faces[t].size() && subset_of(n.faces[s], n.faces[t]))
                cp.restr.emplace(std::make_pair(s, t), id_comps);
    return cp;
}

Matrix ComplexPresheaf::restriction_at(std::size_t from, std::size_t to, int deg) const
{
    auto it = restr.find({from, to});
    require(it != restr.end(), Errc::shape_mismatch, "complex presheaf: missing restriction");
    int i = deg - cx[from].lo();
    if (i >= 0 && i < static_cast<int>(it->second.size()))
        return it->second[static_cast<std::size_t>(i)];
    return Matrix::zero(field, cx[to].dim(deg), cx[from].dim(deg));
}

ChainMap ComplexPresheaf::restriction_map(std::size_t from, std::size_t to) const
{
    auto it = restr.find({from, to});
    require(it != restr.end(), Errc::shape_mismatch, "complex presheaf: missing restriction");
    return ChainMap::make(cx[from], cx[to], cx[from].lo(), it->second);
}

void ComplexPresheaf::validate() const
{
    nerve.validate();
    require(cx.size() == nerve.faces.size(), Errc::shape_mismatch,
            "complex presheaf: one complex per face");
    for (const auto& c : cx) {
        require(c.field() == field, Errc::field_mismatch, "complex presheaf: field mismatch");
        c.validate();
    }
    for (std::size_t s = 0; s < nerve.faces.size(); ++s)
        for (std::size_t t = 0; t < nerve.faces.size(); ++t) {
            if (nerve.faces[s].size() + 1 != nerve.faces[t].size() ||
                !subset_of(nerve.faces[s], nerve.faces[t]))
                continue;
            restriction_map(s, t).validate(); // chain map check
        }
    // functoriality on codim-2 squares, degreewise
    for (std::size_t s = 0; s < nerve.faces.size(); ++s)
        for (std::size_t t = 0; t < nerve.faces.size(); ++t) {
            if (nerve.faces[s].size() + 2 != nerve.faces[t].size() ||
                !subset_of(nerve.faces[s], nerve.faces[t]))
                continue;
            std::vector<ChainMap> routes;
            for (std::size_t m = 0; m < nerve.faces.size(); ++m)
                if (nerve.faces[m].size() == nerve.faces[s].size() + 1 &&
                    subset_of(nerve.faces[s], nerve.faces[m]) &&
                    subset_of(nerve.faces[m], nerve.faces[t]))
                    routes.push_back(restriction_map(m, t).compose_after(restriction_map(s, m)));
            for (std::size_t i = 1; i < routes.size(); ++i)
                for (int d = cx[s].lo(); d <= cx[s].hi(); ++d)
                    require(routes[i].at(d) == routes[0].at(d), Errc::functoriality_violation,
                            "complex presheaf restriction square does not commute");
        }
}

ComplexPresheaf skyscraper_complex_presheaf(
    const Nerve& n, Field f,
    const std::vector<std::pair<std::vector<int>, CochainComplex>>& points)
{
    ComplexPresheaf cp;
    cp.nerve = n;
    cp.field = f;
    auto points_on = [&](std::size_t face_id) {
        std::vector<std::size_t> pts;
        for (std::size_t z = 0; z < points.size(); ++z) {
            std::vector<int> po = points[z].first;
            std::sort(po.begin(), po.end());
            if (subset_of(n.faces[face_id], po))
                pts.push_back(z);
        }
        return pts;
    };
    int lo = 0, hi = 0;
    for (const auto& [sup, c] : points) {
        lo = std::min(lo, c.lo());
        hi = std::max(hi, c.hi());
    }
    for (std::size_t i = 0; i < n.faces.size(); ++i) {
        auto pts = points_on(i);
        std::vector<std::size_t> dims;
        std::vector<Matrix> diffs;
        for (int d = lo; d <= hi; ++d) {
            std::size_t s = 0;
            for (auto z : pts)
                s += points[z].second.dim(d);
            dims.push_back(s);
        }
        for (int d = lo; d < hi; ++d) {
            std::vector<std::size_t> rdims, cdims;
            for (auto z : pts)
                rdims.push_back(points[z].second.dim(d + 1));
            for (auto z : pts)
                cdims.push_back(points[z].second.dim(d));
            BlockBuilder bb(f, rdims, cdims);
            for (std::size_t bi = 0; bi < pts.size(); ++bi)
                bb.place(bi, bi, points[pts[bi]].second.d(d));
            diffs.push_back(bb.result());
        }
        cp.cx.push_back(CochainComplex(f, lo, std::move(dims), std::move(diffs), false));
    }
    for (std::size_t s = 0; s < n.faces.size(); ++s)
        for (std::size_t t = 0; t < n.faces.size(); ++t) {
            if (n.faces[s].size() + 1 != n.faces[t].size() || !subset_of(n.faces[s], n.faces[t]))
                continue;
            auto ps = points_on(s), pt = points_on(t);
            std::vector<Matrix> comps;
            for (int d = lo; d <= hi; ++d) {
                Matrix r(f, cp.cx[t].dim(d), cp.cx[s].dim(d));
                std::size_t roff = 0;
                for (auto zt : pt) {
                    std::size_t coff = 0;
                    for (auto zs : ps) {
                        if (zs == zt)
                            for (std::size_t i = 0; i < points[zt].second.dim(d); ++i)
                                r.set(roff + i, coff + i, Scalar(1));
                        coff += points[zs].second.dim(d);
                    }
                    roff += points[zt].second.dim(d);
                }
                comps.push_back(std::move(r));
            }
            cp.restr.emplace(std::make_pair(s, t), std::move(comps));
        }
    return cp;
}

HyperData hypercohomology(const ComplexPresheaf& cp)
{
    cp.validate();
    const Nerve& n = cp.nerve;
    const Field& F = cp.field;
    const int maxp = n.max_dim();
    int qlo = 0, qhi = 0;
    bool first = true;
    for (const auto& c : cp.cx) {
        if (c.empty_support())
            continue;
        qlo = first ? c.lo() : std::min(qlo, c.lo());
        qhi = first ? c.hi() : std::max(qhi, c.hi());
        first = false;
    }
    if (first)
        qlo = qhi = 0;

    std::vector<std::vector<std::size_t>> dims(static_cast<std::size_t>(maxp + 1));
    std::vector<std::vector<Matrix>> dh(static_cast<std::size_t>(maxp + 1)),
        dv(static_cast<std::size_t>(maxp + 1));
    for (int p = 0; p <= maxp; ++p) {
        auto ids = n.faces_of_dim(p);
        for (int q = qlo; q <= qhi; ++q) {
            std::size_t off = 0;
            for (auto id : ids)
                off += cp.cx[id].dim(q);
            dims[static_cast<std::size_t>(p)].push_back(off);
        }
    }
    auto block_offsets = [&](int p, int q) {
        auto ids = n.faces_of_dim(p);
        std::vector<std::size_t> offs;
        std::size_t off = 0;
        for (auto id : ids) {
            offs.push_back(off);
            off += cp.cx[id].dim(q);
        }
        return offs;
    };
    for (int p = 0; p <= maxp; ++p) {
        auto ids = n.faces_of_dim(p);
        for (int q = qlo; q <= qhi; ++q) {
            // vertical: (-1)^p on the per-face differential
            std::size_t rows = 0, cols = 0;
            auto offs_q = block_offsets(p, q);
            auto offs_q1 = block_offsets(p, q + 1);
            for (auto id : ids) {
                rows += cp.cx[id].dim(q + 1);
                cols += cp.cx[id].dim(q);
            }
            Matrix v(F, rows, cols);
            const Scalar sgn = (p % 2 == 0) ? Scalar(1) : Scalar(-1);
            for (std::size_t bi = 0; bi < ids.size(); ++bi) {
                Matrix dd = cp.cx[ids[bi]].d(q).scaled(sgn);
                for (std::size_t i = 0; i < dd.rows(); ++i)
                    for (std::size_t j = 0; j < dd.cols(); ++j)
                        if (dd(i, j) != 0)
                            v.set(offs_q1[bi] + i, offs_q[bi] + j, dd(i, j));
            }
            dv[static_cast<std::size_t>(p)].push_back(std::move(v));

            // horizontal: Cech alternating sum of restrictions at degree q
            std::size_t hrows = 0;
            auto dst_ids = n.faces_of_dim(p + 1);
            auto dst_offs = block_offsets(p + 1, q);
            for (auto id : dst_ids)
                hrows += cp.cx[id].dim(q);
            Matrix hmx(F, hrows, cols);
            for (std::size_t ti = 0; ti < dst_ids.size(); ++ti) {
                const auto& sigma = n.faces[dst_ids[ti]];
                for (std::size_t j = 0; j < sigma.size(); ++j) {
                    std::vector<int> tau;
                    for (std::size_t t = 0; t < sigma.size(); ++t)
                        if (t != j)
                            tau.push_back(sigma[t]);
                    long tid = n.face_index(tau);
                    auto itpos = std::find(ids.begin(), ids.end(), static_cast<std::size_t>(tid));
                    std::size_t si = static_cast<std::size_t>(itpos - ids.begin());
                    Matrix r = cp.restriction_at(static_cast<std::size_t>(tid), dst_ids[ti], q);
                    const Scalar s2 = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
                    for (std::size_t a = 0; a < r.rows(); ++a)
                        for (std::size_t b = 0; b < r.cols(); ++b)
                            if (r(a, b) != 0)
                                hmx.set(dst_offs[ti] + a, offs_q[si] + b,
                                        F.add(hmx(dst_offs[ti] + a, offs_q[si] + b),
                                              F.mul(s2, r(a, b))));
                }
            }
            dh[static_cast<std::size_t>(p)].push_back(std::move(hmx));
        }
    }
    DoubleComplex dc(F, 0, qlo, std::move(dims), std::move(dh), std::move(dv));
    HyperData out{std::move(dc), {}};
    out.total_dims = total_cohomology_dims(out.dc);
    return out;
}

DoubleComplex hyper_double_complex_row_signs(const ComplexPresheaf& cp)
{
    // same bigraded data, but the sign (-1)^q rides on the horizontal maps
    HyperData base = hypercohomology(cp);
    const DoubleComplex& d0 = base.dc;
    std::vector<std::vector<std::size_t>> dims;
    std::vector<std::vector<Matrix>> dh, dv;
    for (int p = d0.p_lo(); p <= d0.p_hi(); ++p) {
        std::vector<std::size_t> drow;
        std::vector<Matrix> hrow, vrow;
        for (int q = d0.q_lo(); q <= d0.q_hi(); ++q) {
            drow.push_back(d0.dim(p, q));
            const Scalar sp = (p % 2 == 0) ? Scalar(1) : Scalar(-1);
            const Scalar sq = (((q % 2) + 2) % 2 == 0) ? Scalar(1) : Scalar(-1);
            vrow.push_back(d0.dv(p, q).scaled(sp));  // undo the column sign
            hrow.push_back(d0.dh(p, q).scaled(sq));  // apply the row sign
        }
        dims.push_back(std::move(drow));
        dh.push_back(std::move(hrow));
        dv.push_back(std::move(vrow));
    }
    return DoubleComplex(d0.field(), d0.p_lo(), d0.q_lo(), std::move(dims), std::move(dh),
                         std::move(dv));
}

bool globaxten_check(const std::vector<Vec>& f, const std::vector<Vec>& h,
                     const ComplexPresheaf& cp)
{
    const Nerve& n = cp.nerve;
    auto v0 = n.faces_of_dim(0);
    auto v1 = n.faces_of_dim(1);
    require(f.size() == v0.size(), Errc::shape_mismatch, "globaxten: f needs one entry per vertex");
    require(h.size() == v1.size(), Errc::shape_mismatch, "globaxten: h needs one entry per edge");
    for (std::size_t i = 0; i < v0.size(); ++i)
        require(f[i].size() == cp.cx[v0[i]].dim(1), Errc::shape_mismatch,
                "globaxten: f entry dimension mismatch");
    for (std::size_t i = 0; i < v1.size(); ++i)
        require(h[i].size() == cp.cx[v1[i]].dim(0), Errc::shape_mismatch,
                "globaxten: h entry dimension mismatch");

    const Field& F = cp.field;
    // del* f = 0 on every vertex
    for (std::size_t i = 0; i < v0.size(); ++i) {
        Vec img = cp.cx[v0[i]].d(1).apply(f[i]);
        for (const auto& x : img)
            if (x != 0)
                return false;
    }
    // delta f = del* h on every edge
    for (std::size_t e = 0; e < v1.size(); ++e) {
        const auto& edge = n.faces[v1[e]];
        std::vector<int> a{edge[0]}, b{edge[1]};
        std::size_t ia = 0, ib = 0;
        for (std::size_t i = 0; i < v0.size(); ++i) {
            if (n.faces[v0[i]] == a)
                ia = i;
            if (n.faces[v0[i]] == b)
                ib = i;
        }
        Vec lhs_b = cp.restriction_at(v0[ib], v1[e], 1).apply(f[ib]);
        Vec lhs_a = cp.restriction_at(v0[ia], v1[e], 1).apply(f[ia]);
        Vec rhs = cp.cx[v1[e]].d(0).apply(h[e]);
        for (std::size_t i = 0; i < lhs_b.size(); ++i)
            if (F.sub(lhs_b[i], lhs_a[i]) != rhs[i])
                return false;
    }
    // delta h = 0 on every 2-face
    for (auto t2 : n.faces_of_dim(2)) {
        const auto& tri = n.faces[t2];
        Vec acc(cp.cx[static_cast<std::size_t>(t2)].dim(0), Scalar(0));
        for (std::size_t j = 0; j < 3; ++j) {
            std::vector<int> tau;
            for (std::size_t t = 0; t < 3; ++t)
                if (t != j)
                    tau.push_back(tri[t]);
            long tid = n.face_index(tau);
            std::size_t epos = 0;
            for (std::size_t i = 0; i < v1.size(); ++i)
                if (v1[i] == static_cast<std::size_t>(tid))
                    epos = i;
            Vec part = cp.restriction_at(static_cast<std::size_t>(tid),
                                         static_cast<std::size_t>(t2), 0)
                           .apply(h[epos]);
            const Scalar sgn = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] = F.add(acc[i], F.mul(sgn, part[i]));
        }
        for (const auto& x : acc)
            if (x != 0)
                return false;
    }
    return true;
}

NervePresheaf ext_presheaf(const ComplexPresheaf& cp, int k)
{
    NervePresheaf p;
    p.nerve = cp.nerve;
    p.field = cp.field;
    for (const auto& c : cp.cx)
        p.dims.push_back(c.cohomology(k).dim);
    for (const auto& [key, comps] : cp.restr) {
        (void)comps;
        ChainMap r = cp.restriction_map(key.first, key.second);
        p.restr.emplace(key, r.induced_on_cohomology(k));
    }
    return p;
}

VertexLesReport vertex_les(const Nerve& nerve, const std::vector<SectorSes>& sectors,
                           std::size_t k, std::size_t length)
{
    require(length >= k + 2, Errc::truncation_too_short, "vertex_les: need length >= k+2");
    require(!sectors.empty(), Errc::invalid_argument, "vertex_les: no sectors supplied");
    const Field F = sectors.front().f.field();

    struct SectorData {
        std::size_t ker_dim, mid_dim, im_dim;
        Matrix incl; // ker -> mid
        Matrix proj; // mid -> im
    };
    std::vector<SectorData> data;
    for (const auto& sec : sectors) {
        sec.inject.validate();  // NotAMorphism on bad input
        sec.project.validate();
        require((sec.project.mat * sec.inject.mat).is_zero(), Errc::not_exact,
                "vertex_les: project o inject != 0");
        FreeResolution res = free_resolution(sec.f, length);
        CochainComplex exC = ext_cochain_complex(res, sec.project.src, length);
        CochainComplex exD = ext_cochain_complex(res, sec.project.dst, length);
        // beta on cohomology at degree k: postcompose with project
        std::vector<Matrix> comps;
        for (std::size_t q = 0; q <= length; ++q)
            comps.push_back(kron(Matrix::identity(F, res.ranks[q]), sec.project.mat));
        ChainMap beta_cx = ChainMap::make(exC, exD, 0, std::move(comps));
        Matrix beta = beta_cx.induced_on_cohomology(static_cast<int>(k));
        Subspace kerb = kernel_basis(beta);
        Subspace imb = image_space(beta);
        SectorData sd;
        sd.ker_dim = kerb.dim();
        sd.mid_dim = beta.cols();
        sd.im_dim = imb.dim();
        sd.incl = kerb.basis().transpose();
        // corestriction of beta onto its image basis
        Matrix cor(F, imb.dim(), beta.cols());
        for (std::size_t j = 0; j < beta.cols(); ++j) {
            Vec e(beta.cols(), Scalar(0));
            e[j] = 1;
            Vec c = *imb.coordinates(beta.apply(e));
            for (std::size_t i = 0; i < imb.dim(); ++i)
                cor.set(i, j, c[i]);
        }
        sd.proj = std::move(cor);
        data.push_back(std::move(sd));
    }

    // assemble the three skyscraper-style presheaves and the SES of their
    // Cech complexes
    auto sectors_on = [&](std::size_t fid) {
        std::vector<std::size_t> zs;
        for (std::size_t z = 0; z < sectors.size(); ++z) {
            std::vector<int> sup = sectors[z].support;
            std::sort(sup.begin(), sup.end());
            if (subset_of(nerve.faces[fid], sup))
                zs.push_back(z);
        }
        return zs;
    };
    auto make_presheaf = [&](auto dim_of) {
        NervePresheaf p;
        p.nerve = nerve;
        p.field = F;
        for (std::size_t i = 0; i < nerve.faces.size(); ++i) {
            std::size_t s = 0;
            for (auto z : sectors_on(i))
                s += dim_of(z);
            p.dims.push_back(s);
        }
        for (std::size_t s = 0; s < nerve.faces.size(); ++s)
            for (std::size_t t = 0; t < nerve.faces.size(); ++t) {
                if (nerve.faces[s].size() + 1 != nerve.faces[t].size() ||
                    !subset_of(nerve.faces[s], nerve.faces[t]))
                    continue;
                auto zs = sectors_on(s), zt = sectors_on(t);
                Matrix r(F, p.dims[t], p.dims[s]);
                std::size_t roff = 0;
                for (auto z2 : zt) {
                    std::size_t coff = 0;
                    for (auto z1 : zs) {
                        if (z1 == z2)
                            for (std::size_t i = 0; i < dim_of(z2); ++i)
                                r.set(roff + i, coff + i, Scalar(1));
                        coff += dim_of(z1);
                    }
                    roff += dim_of(z2);
                }
                p.restr.emplace(std::make_pair(s, t), std::move(r));
            }
        return p;
    };
    NervePresheaf ker_p = make_presheaf([&](std::size_t z) { return data[z].ker_dim; });
    NervePresheaf mid_p = make_presheaf([&](std::size_t z) { return data[z].mid_dim; });
    NervePresheaf im_p = make_presheaf([&](std::size_t z) { return data[z].im_dim; });

    CechComplexData kC = cech_complex(ker_p), mC = cech_complex(mid_p), iC = cech_complex(im_p);

    auto facewise_map = [&](const CechComplexData& ca, const CechComplexData& cb, auto block) {
        std::vector<Matrix> comps;
        for (int q = 0; q <= nerve.max_dim(); ++q) {
            Matrix m(F, cb.cx.dim(q), ca.cx.dim(q));
            const auto& ids = ca.face_ids[static_cast<std::size_t>(q)];
            for (std::size_t fi = 0; fi < ids.size(); ++fi) {
                // per-sector blocks, in sector order on this face
                std::size_t ro = cb.offsets[static_cast<std::size_t>(q)][fi];
                std::size_t co = ca.offsets[static_cast<std::size_t>(q)][fi];
                for (auto z : sectors_on(ids[fi])) {
                    Matrix blk = block(z);
                    for (std::size_t i = 0; i < blk.rows(); ++i)
                        for (std::size_t j2 = 0; j2 < blk.cols(); ++j2)
                            if (blk(i, j2) != 0)
                                m.set(ro + i, co + j2, blk(i, j2));
                    ro += blk.rows();
                    co += blk.cols();
                }
            }
            comps.push_back(std::move(m));
        }
        return comps;
    };

    ChainMap inc = ChainMap::make(
        kC.cx, mC.cx, 0, facewise_map(kC, mC, [&](std::size_t z) { return data[z].incl; }));
    ChainMap prj = ChainMap::make(
        mC.cx, iC.cx, 0, facewise_map(mC, iC, [&](std::size_t z) { return data[z].proj; }));
    ShortExactSeq ses{inc, prj};
    VertexLesReport rep;
    rep.les = les_of_ses(ses);
    rep.exact = rep.les.exact;
    for (int q = 0; q <= nerve.max_dim(); ++q) {
        rep.ker_dims.push_back(kC.cx.cohomology(q).dim);
        rep.mid_dims.push_back(mC.cx.cohomology(q).dim);
        rep.im_dims.push_back(iC.cx.cohomology(q).dim);
    }
    return rep;
}

} // namespace homcat
