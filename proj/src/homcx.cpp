#include "homcat/homcx.hpp"

#include <algorithm>

namespace homcat {

const std::vector<HomBlock> HomComplex::kNoBlocks{};

const std::vector<HomBlock>& HomComplex::blocks(int m) const
{
    auto it = blocks_.find(m);
    return it == blocks_.end() ? kNoBlocks : it->second;
}

HomComplex hom_complex(const CochainComplex& p, const CochainComplex& b)
{
    require(p.field() == b.field(), Errc::field_mismatch, "hom_complex: field mismatch");
    const Field& F = p.field();
    if (p.empty_support() || b.empty_support())
        return HomComplex(CochainComplex::zero(F), p, b, {});

    const int lo = b.lo() - p.hi();
    const int hi = b.hi() - p.lo();
    std::map<int, std::vector<HomBlock>> blocks;
    std::vector<std::size_t> dims;
    for (int m = lo; m <= hi; ++m) {
        std::vector<HomBlock> bs;
        std::size_t off = 0;
        for (int i = p.lo(); i <= p.hi(); ++i) {
            std::size_t r = b.dim(m + i), c = p.dim(i);
            if (r == 0 || c == 0)
                continue;
            bs.push_back(HomBlock{i, r, c, off});
            off += r * c;
        }
        dims.push_back(off);
        blocks.emplace(m, std::move(bs));
    }

    std::vector<Matrix> diffs;
    for (int m = lo; m < hi; ++m) {
        const auto& src = blocks.at(m);
        const auto& dst = blocks.at(m + 1);
        std::vector<std::size_t> rdims, cdims;
        for (const auto& t : dst)
            rdims.push_back(t.rows * t.cols);
        for (const auto& s : src)
            cdims.push_back(s.rows * s.cols);
        BlockBuilder bb(F, rdims, cdims);
        const Scalar sgn = (((m % 2) + 2) % 2 == 0) ? Scalar(-1) : Scalar(1); // -(-1)^m
        for (std::size_t ti = 0; ti < dst.size(); ++ti) {
            const HomBlock& t = dst[ti];
            for (std::size_t si = 0; si < src.size(); ++si) {
                const HomBlock& s = src[si];
                if (s.i == t.i) {
                    // d_B o s_i
                    bb.place(ti, si, kron(Matrix::identity(F, s.cols), b.d(m + s.i)));
                } else if (s.i == t.i + 1) {
                    // -(-1)^m s_{i+1} o d_P
                    bb.place(ti, si, kron(p.d(t.i).transpose(),
                                          Matrix::identity(F, t.rows))
                                         .scaled(sgn));
                }
            }
        }
        diffs.push_back(bb.result());
    }
    CochainComplex cx(F, lo, std::move(dims), std::move(diffs));
    return HomComplex(std::move(cx), p, b, std::move(blocks));
}

ChainMap induced_hom_map(const CochainComplex& p, const ChainMap& g)
{
    HomComplex hk = hom_complex(p, g.src);
    HomComplex hl = hom_complex(p, g.dst);
    const Field& F = p.field();
    int lo = std::min(hk.complex().lo(), hl.complex().lo());
    int hi = std::max(hk.complex().hi(), hl.complex().hi());
    std::vector<Matrix> comps;
    for (int m = lo; m <= hi; ++m) {
        const auto& src = hk.blocks(m);
        const auto& dst = hl.blocks(m);
        std::vector<std::size_t> rdims, cdims;
        for (const auto& t : dst)
            rdims.push_back(t.rows * t.cols);
        for (const auto& s : src)
            cdims.push_back(s.rows * s.cols);
        BlockBuilder bb(F, rdims, cdims);
        for (std::size_t ti = 0; ti < dst.size(); ++ti)
            for (std::size_t si = 0; si < src.size(); ++si)
                if (src[si].i == dst[ti].i)
                    bb.place(ti, si, kron(Matrix::identity(F, src[si].cols), g.at(m + src[si].i)));
        comps.push_back(bb.result());
    }
    return ChainMap::make(hk.complex(), hl.complex(), lo, std::move(comps));
}

namespace {

struct RowSegment {
    std::size_t offset; // into the flat degree space
    std::size_t rows;   // contiguous target rows of this segment
};

// Permutation from a "stacked pieces" layout (list of blocks, each column-major
// with a single row segment) onto a "interleaved" layout where each source
// column of block i runs through several stacked row segments.
//
// pieces: for each block index position: cols, and the per-piece segments in
// stacking order together with their destination row offsets inside the
// interleaved column.
Matrix permutation(const Field& F, std::size_t dim_from, std::size_t dim_to,
                   const std::vector<std::tuple<std::size_t, std::size_t, std::size_t,
                                                std::size_t, std::size_t>>& entries)
{
    // entries: (from_offset, cols, rows, to_offset, to_stride) mapping
    // from_offset + j*rows + r  ->  to_offset + j*to_stride + r
    Matrix m(F, dim_to, dim_from);
    for (const auto& [from_off, cols, rows, to_off, to_stride] : entries)
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t r = 0; r < rows; ++r)
                m.set(to_off + j * to_stride + r, from_off + j * rows + r, Scalar(1));
    return m;
}

// Compare two complexes via per-degree permutations sigma_m: A^m -> B^m:
// dims must match and sigma_{m+1} d_A = d_B sigma_m exactly.
bool equal_up_to_permutation(const CochainComplex& a, const CochainComplex& b,
                             const std::map<int, Matrix>& sigma)
{
    int lo = std::min(a.lo(), b.lo());
    int hi = std::max(a.hi(), b.hi());
    auto sig = [&](int m) -> Matrix {
        auto it = sigma.find(m);
        if (it != sigma.end())
            return it->second;
        return Matrix::zero(a.field(), b.dim(m), a.dim(m));
    };
    for (int m = lo; m <= hi; ++m) {
        if (a.dim(m) != b.dim(m))
            return false;
        if (sig(m + 1) * a.d(m) != b.d(m) * sig(m))
            return false;
    }
    return true;
}

} // namespace

bool cone_hom_matches(const CochainComplex& p, const ChainMap& g, const CochainComplex& cone_side)
{
    // cone_side plays Con(Hom(p,g)); compare against Hom(p, Con(g))
    HomComplex hk = hom_complex(p, g.src);
    HomComplex hl = hom_complex(p, g.dst);
    HomComplex homcone = hom_complex(p, cone(g));
    const CochainComplex& K = g.src;
    const Field& F = p.field();

    std::map<int, Matrix> sigma;
    for (int m = std::min(cone_side.lo(), homcone.complex().lo());
         m <= std::max(cone_side.hi(), homcone.complex().hi()); ++m) {
        const std::size_t khat_dim = hk.complex().dim(m + 1);
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>>
            entries;
        // destination offsets per i inside Hom(p, Con(g))^m
        for (const auto& t : homcone.blocks(m)) {
            const std::size_t kd = K.dim(m + 1 + t.i); // K-rows inside Con(g)^{m+i}
            // K-part source block lives in Hom(p,K)^{m+1}
            for (const auto& s : hk.blocks(m + 1))
                if (s.i == t.i)
                    entries.emplace_back(s.offset, s.cols, s.rows, t.offset, t.rows);
            // L-part source block lives in Hom(p,L)^m, shifted below K-hat
            for (const auto& s : hl.blocks(m))
                if (s.i == t.i)
                    entries.emplace_back(khat_dim + s.offset, s.cols, s.rows, t.offset + kd,
                                         t.rows);
        }
        sigma.emplace(m, permutation(F, cone_side.dim(m), homcone.complex().dim(m), entries));
    }
    return equal_up_to_permutation(cone_side, homcone.complex(), sigma);
}

bool cylinder_hom_matches(const CochainComplex& p, const ChainMap& g,
                          const CochainComplex& cyl_side)
{
    HomComplex hb = hom_complex(p, g.src);
    HomComplex ha = hom_complex(p, g.dst);
    HomComplex homcyl = hom_complex(p, cylinder(g).cyl);
    const CochainComplex& B = g.src;
    const CochainComplex& A = g.dst;
    const Field& F = p.field();

    std::map<int, Matrix> sigma;
    for (int m = std::min(cyl_side.lo(), homcyl.complex().lo());
         m <= std::max(cyl_side.hi(), homcyl.complex().hi()); ++m) {
        const std::size_t bhat_m = hb.complex().dim(m);
        const std::size_t bhat_m1 = hb.complex().dim(m + 1);
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>>
            entries;
        for (const auto& t : homcyl.blocks(m)) {
            const std::size_t b0 = B.dim(m + t.i);     // B-rows of Cyl^{m+i}
            const std::size_t b1 = B.dim(m + 1 + t.i); // B^{+1}-rows
            (void)A;
            for (const auto& s : hb.blocks(m))
                if (s.i == t.i)
                    entries.emplace_back(s.offset, s.cols, s.rows, t.offset, t.rows);
            for (const auto& s : hb.blocks(m + 1))
                if (s.i == t.i)
                    entries.emplace_back(bhat_m + s.offset, s.cols, s.rows, t.offset + b0, t.rows);
            for (const auto& s : ha.blocks(m))
                if (s.i == t.i)
                    entries.emplace_back(bhat_m + bhat_m1 + s.offset, s.cols, s.rows,
                                         t.offset + b0 + b1, t.rows);
        }
        sigma.emplace(m, permutation(F, cyl_side.dim(m), homcyl.complex().dim(m), entries));
    }
    return equal_up_to_permutation(cyl_side, homcyl.complex(), sigma);
}

bool cone_hom_commutes(const CochainComplex& p, const ChainMap& g)
{
    ChainMap ghat = induced_hom_map(p, g);
    if (!cone_hom_matches(p, g, cone(ghat)))
        return false;
    return cylinder_hom_matches(p, g, cylinder(ghat).cyl);
}

} // namespace homcat
