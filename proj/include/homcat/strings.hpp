#pragma once

#include <optional>

#include "homcat/algebra.hpp"

namespace homcat {

// Length-1 extension 0 -> G -> H -> F -> 0 of modules (sub = G, quo = F).
struct Extension1 {
    AModule sub, mid, quo;
    ModuleMap inject;  // sub -> mid
    ModuleMap project; // mid -> quo

    void validate() const;
};

Extension1 split_extension(const AModule& g, const AModule& f);

// pullback along gamma : F' -> F (middle = fibered product)
Extension1 pullback_ext(const Extension1& s, const ModuleMap& gamma);
// pushout along alpha : G -> G' (middle = fibered coproduct)
Extension1 pushout_ext(const Extension1& s, const ModuleMap& alpha);

// equivalence over identity end maps; decided by an exact linear solve, the
// five lemma makes any solution an isomorphism (asserted)
bool is_equivalent(const Extension1& s, const Extension1& t);

Extension1 baer_sum(const Extension1& s, const Extension1& t);

// p-fold extension as a splice S_p * ... * S_1; splices[0] holds G, the last
// splice ends at F, adjacent sub/quo modules are equal as data.
struct ExtensionP {
    std::vector<Extension1> splices;

    void validate() const;
    std::size_t p() const { return splices.size(); }
    const AModule& g_module() const { return splices.front().sub; }
    const AModule& f_module() const { return splices.back().quo; }
};

// iterated connecting image of the identity; inverse to
// extension_from_cocycle on classes
ExtClass ext_class_of(const ExtensionP& e);
ExtClass ext_class_of1(const Extension1& e);

// Theorem-style construction: factor the cocycle through the cokernel,
// push out, splice with the truncated resolution.
ExtensionP extension_from_cocycle(const ExtClass& f);

struct Obstruction {
    ExtClass value;
    bool vanishes = false;
    // witness class when the obstruction vanishes: an element of
    // Ext^p(C, G) restricting to rho (extend) or of Ext^p(F, C) lifting
    // through the projection (lift)
    std::optional<ExtClass> witness;
};

// obstruction to extending rho in Ext^p(B, G) along the submodule inclusion
// of u : 0 -> B -> C -> D -> 0; value lands in Ext^{p+1}(D, G)
Obstruction obstruction_extend(const ExtClass& rho, const Extension1& u);
// obstruction to lifting tau in Ext^p(F, D) through C -> D; value lands in
// Ext^{p+1}(F, B)
Obstruction obstruction_lift(const ExtClass& tau, const Extension1& u);

enum class LesSide { covariant_from_f, contravariant_to_g };

struct StringLesReport {
    LongExactSequence les;
    bool exact = false;
    bool free_case_checked = false; // Ext^{k>0}(other,-) = 0 and Ext^0 = Hom
    bool free_case_ok = false;
};
StringLesReport les_report(const Extension1& u, const AModule& other, LesSide side,
                           std::size_t length);

// Horseshoe resolution of the middle of u built from the memoized
// resolutions of sub and quo; terms split as P(B)_q (+) P(D)_q.
struct Horseshoe {
    FreeResolution res; // resolution of u.mid
    std::vector<std::size_t> ranks_b, ranks_d;
};
Horseshoe horseshoe(const Extension1& u, std::size_t length);

// functorial maps on Ext used by the obstruction tests:
// restriction Ext^p(C, G) -> Ext^p(B, G) along the horseshoe inclusion
ExtClass ext_restrict(const ExtClass& c_class, const Extension1& u, const Horseshoe& hs);
// pushforward Ext^p(F, C) -> Ext^p(F, D) along the projection of u
ExtClass ext_pushforward(const ExtClass& f_to_c, const Extension1& u);

} // namespace homcat
