#include "torsionkit/torsion.hpp"

#include <algorithm>

namespace torsionkit {

K1Class::K1Class(RingElement det, GroupSpec over) : det_(std::move(det)), over_(std::move(over)) {
    require_same_spec(det_.spec(), over_, "K1Class");
    if (!gr_inverse(det_)) throw contract_error("K1Class: determinant is not a certified unit");
}

K1Class operator*(const K1Class& a, const K1Class& b) {
    require_same_spec(a.over_, b.over_, "K1Class::operator*");
    return K1Class(a.det_ * b.det_, a.over_);
}

WhClass::WhClass(const K1Class& c) {
    const RingElement& det = c.det();
    const GroupSpec& spec = det.spec();

    // shift the Laurent support so every free exponent starts at 0
    std::vector<std::int64_t> shift(static_cast<std::size_t>(spec.free_rank), 0);
    bool first = true;
    for (const auto& [g, coeff] : det.terms()) {
        for (int i = 0; i < spec.free_rank; ++i) {
            if (first || g.free_exponents[static_cast<std::size_t>(i)] < shift[static_cast<std::size_t>(i)])
                shift[static_cast<std::size_t>(i)] = g.free_exponents[static_cast<std::size_t>(i)];
        }
        first = false;
    }
    RingElement based(spec);
    for (const auto& [g, coeff] : det.terms()) {
        GroupElement k = g;
        for (int i = 0; i < spec.free_rank; ++i)
            k.free_exponents[static_cast<std::size_t>(i)] -= shift[static_cast<std::size_t>(i)];
        based.add_term(k, coeff);
    }

    // least associate under sign and torsion shifts
    bool have = false;
    for (const GroupElement& t : torsion_elements(spec)) {
        RingElement shifted = RingElement::monomial(spec, t, 1) * based;
        for (int sgn = 0; sgn < 2; ++sgn) {
            RingElement cand = sgn ? -shifted : shifted;
            if (!have || ring_element_less(cand, canonical_)) {
                canonical_ = cand;
                have = true;
            }
        }
    }
}

K1Class gersten_torsion(const EquivalencePack& p) {
    if (!p.is_self_pack())
        throw input_error("gersten_torsion: the pack must be a self-equivalence");
    return K1Class(whitehead_torsion_det(p), p.f.source()->spec());
}

WhClass to_whitehead(const K1Class& c) { return WhClass(c); }

namespace {

void embed_entry_block(RingMatrix& dst, const RingMatrix& block, std::size_t row_off,
                       std::size_t col_off) {
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
            if (!block.at(i, j).is_zero()) dst.at(row_off + i, col_off + j) = block.at(i, j);
}

EquivalencePack negate_pack(const EquivalencePack& p) {
    ChainMap f = -p.f, g = -p.g;
    std::vector<RingMatrix> hm, km;
    for (int d = p.f.target()->lo(); d <= p.f.target()->hi(); ++d) hm.push_back(p.h.component(d));
    for (int d = p.f.source()->lo(); d <= p.f.source()->hi(); ++d) km.push_back(p.k.component(d));
    ChainHomotopy h(compose(f, g), ChainMap::identity(p.f.target()), std::move(hm));
    ChainHomotopy k(compose(g, f), ChainMap::identity(p.f.source()), std::move(km));
    return EquivalencePack{std::move(f), std::move(g), std::move(h), std::move(k)};
}

std::string sk1_caveat(const GroupSpec& spec) {
    return "verdict is determinant-level: SK1(Z[" + spec.describe() + "]) is not modeled";
}

}  // namespace

K1Class induced_cone_torsion(const ChainMap& phi, const EquivalencePack& chi,
                             const std::vector<RingMatrix>& sigma) {
    if (!phi.is_self_map() || !chi.is_self_pack() || !(*phi.source() == *chi.f.source()))
        throw input_error("induced_cone_torsion: phi and chi must live on one complex");
    if (!phi.validates()) throw input_error("induced_cone_torsion: phi is not a chain map");
    if (!chi.validates()) throw input_error("induced_cone_torsion: invalid pack");
    const ComplexPtr& x = phi.source();
    const GroupSpec& spec = x->spec();
    ChainHomotopy comm(compose(chi.f, phi), compose(phi, chi.f), sigma);
    if (!comm.validates())
        throw input_error("induced_cone_torsion: sigma is not a homotopy chi phi ~ phi chi");

    auto r = [&](int k) { return x->rank(k); };
    auto sig = [&](int k) { return comm.component(k); };

    auto w = std::make_shared<const BasedComplex>(mapping_cone(phi));

    // H = [[chi, sigma],[0, chi]] on W = cone(phi)
    std::vector<RingMatrix> hcomps;
    for (int n = w->lo(); n <= w->hi(); ++n) {
        RingMatrix m(spec, w->rank(n), w->rank(n));
        embed_entry_block(m, chi.f.component(n), 0, 0);
        embed_entry_block(m, sig(n - 1), 0, r(n));
        embed_entry_block(m, chi.f.component(n - 1), r(n), r(n));
        hcomps.push_back(std::move(m));
    }
    ChainMap h(w, w, std::move(hcomps));
    if (!h.validates()) throw contract_error("induced_cone_torsion: induced map fails chain check");

    auto cone_h = std::make_shared<const BasedComplex>(mapping_cone(h));

    // Contraction through 0 -> cone(chi) -> cone(H) -> cone(chi)[1] -> 0.
    Contraction du = cone_contraction(chi);       // on cone(chi)
    Contraction d2 = cone_contraction(negate_pack(chi));  // on cone(-chi)

    // E_n : V_n -> U_{n-1}, the connecting block of the extension
    auto e_block = [&](int n) {
        RingMatrix m(spec, r(n - 1) + r(n - 2), r(n - 1) + r(n - 2));
        embed_entry_block(m, phi.component(n - 1), 0, 0);
        embed_entry_block(m, sig(n - 2), 0, r(n - 1));
        embed_entry_block(m, -phi.component(n - 2), r(n - 1), r(n - 1));
        return m;
    };

    std::vector<RingMatrix> delta;
    for (int n = cone_h->lo(); n <= cone_h->hi(); ++n) {
        // cone(H)_n slots: a = X_n, b = X_{n-1}, c = X_{n-1}, e = X_{n-2}
        std::size_t a = 0, b = r(n), cc = r(n) + r(n - 1), ee = r(n) + 2 * r(n - 1);
        std::size_t a1 = 0, b1 = r(n + 1), c1 = r(n + 1) + r(n), e1 = r(n + 1) + 2 * r(n);
        RingMatrix m(spec, cone_h->rank(n + 1), cone_h->rank(n));

        // U -> U block: contraction of cone(chi) at degree n
        RingMatrix u = du.component(n);  // (r(n+1)+r(n)) x (r(n)+r(n-1))
        for (std::size_t i = 0; i < u.rows(); ++i)
            for (std::size_t j = 0; j < u.cols(); ++j) {
                if (u.at(i, j).is_zero()) continue;
                std::size_t row = i < r(n + 1) ? a1 + i : c1 + (i - r(n + 1));
                std::size_t col = j < r(n) ? a + j : cc + (j - r(n));
                m.at(row, col) = u.at(i, j);
            }

        // V -> V block: minus the cone(-chi) contraction, shifted one degree
        RingMatrix v = d2.component(n - 1);  // (r(n)+r(n-1)) x (r(n-1)+r(n-2))
        for (std::size_t i = 0; i < v.rows(); ++i)
            for (std::size_t j = 0; j < v.cols(); ++j) {
                if (v.at(i, j).is_zero()) continue;
                std::size_t row = i < r(n) ? b1 + i : e1 + (i - r(n));
                std::size_t col = j < r(n - 1) ? b + j : ee + (j - r(n - 1));
                m.at(row, col) = -v.at(i, j);
            }

        // V -> U block: -delta_U E delta_V = +delta_U E delta_2
        RingMatrix cross = du.component(n) * e_block(n + 1) * d2.component(n - 1);
        for (std::size_t i = 0; i < cross.rows(); ++i)
            for (std::size_t j = 0; j < cross.cols(); ++j) {
                if (cross.at(i, j).is_zero()) continue;
                std::size_t row = i < r(n + 1) ? a1 + i : c1 + (i - r(n + 1));
                std::size_t col = j < r(n - 1) ? b + j : ee + (j - r(n - 1));
                m.at(row, col) = cross.at(i, j);
            }

        delta.push_back(std::move(m));
    }

    Contraction dc(cone_h, std::move(delta));
    if (!dc.validates())
        throw contract_error("induced_cone_torsion: extension contraction fails identity");

    RingElement raw = torsion_of_acyclic(*cone_h, dc);
    int sign = id_cone_sign(w->ranks(), w->lo());
    return K1Class(sign > 0 ? raw : -raw, spec);
}

TorsionReport swindle_check(const EquivalencePack& f, const EquivalencePack& g,
                            const ChainHomotopy& comm) {
    if (!f.is_self_pack() || !g.is_self_pack() || !(*f.f.source() == *g.f.source()))
        throw input_error("swindle_check: f and g must be self-packs on one complex");
    if (!f.validates() || !g.validates()) throw input_error("swindle_check: invalid pack");
    std::vector<RingMatrix> sigma;
    for (int d = f.f.source()->lo(); d <= f.f.source()->hi(); ++d)
        sigma.push_back(comm.component(d));
    K1Class cls = induced_cone_torsion(f.f, g, sigma);
    TorsionReport rep;
    rep.cls = cls;
    rep.wh = to_whitehead(cls);
    rep.trivial = cls.is_det_one();
    if (f.f.source()->spec().free_rank > 0) rep.caveats.push_back(sk1_caveat(cls.over()));
    return rep;
}

bool TorusSpec::validates() const {
    if (!fiber || !validate_complex(*fiber)) return false;
    if (!monodromy.is_self_pack() || !(*monodromy.f.source() == *fiber)) return false;
    if (!monodromy.validates()) return false;
    GroupSpec expect = extend_by_free_factor(fiber->spec());
    return ambient == expect;
}

GroupSpec extend_by_free_factor(const GroupSpec& spec) {
    return GroupSpec(spec.free_rank + 1, spec.torsion_orders);
}

RingElement induce_element(const RingElement& x, const GroupSpec& ambient) {
    RingElement out(ambient);
    for (const auto& [g, c] : x.terms()) {
        GroupElement k;
        k.free_exponents = g.free_exponents;
        k.free_exponents.push_back(0);
        k.torsion_residues = g.torsion_residues;
        out.add_term(k, c);
    }
    return out;
}

RingMatrix induce_matrix(const RingMatrix& m, const GroupSpec& ambient) {
    RingMatrix out(ambient, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) out.at(i, j) = induce_element(m.at(i, j), ambient);
    return out;
}

BasedComplex induce_complex(const BasedComplex& c, const GroupSpec& ambient) {
    std::vector<RingMatrix> diffs;
    for (int k = c.lo() + 1; k <= c.hi(); ++k) diffs.push_back(induce_matrix(c.diff(k), ambient));
    return BasedComplex(ambient, c.lo(), c.ranks(), std::move(diffs));
}

namespace {

RingElement free_generator(const GroupSpec& ambient) {
    GroupElement t = GroupElement::identity(ambient);
    t.free_exponents[static_cast<std::size_t>(ambient.free_rank - 1)] = 1;
    return RingElement::monomial(ambient, t, 1);
}

struct InducedTorus {
    ComplexPtr base;       // fiber complex over the ambient ring
    ChainMap psi;          // t * m - id
    EquivalencePack mono;  // induced monodromy pack
};

EquivalencePack induce_pack(const EquivalencePack& p, const ComplexPtr& base,
                            const GroupSpec& ambient) {
    std::vector<RingMatrix> fm, gm, hm, km;
    for (int d = base->lo(); d <= base->hi(); ++d) {
        fm.push_back(induce_matrix(p.f.component(d), ambient));
        gm.push_back(induce_matrix(p.g.component(d), ambient));
        hm.push_back(induce_matrix(p.h.component(d), ambient));
        km.push_back(induce_matrix(p.k.component(d), ambient));
    }
    ChainMap f(base, base, std::move(fm));
    ChainMap g(base, base, std::move(gm));
    ChainHomotopy h(compose(f, g), ChainMap::identity(base), std::move(hm));
    ChainHomotopy k(compose(g, f), ChainMap::identity(base), std::move(km));
    return EquivalencePack{std::move(f), std::move(g), std::move(h), std::move(k)};
}

InducedTorus induce_torus(const TorusSpec& t) {
    auto base = std::make_shared<const BasedComplex>(induce_complex(*t.fiber, t.ambient));
    EquivalencePack mono = induce_pack(t.monodromy, base, t.ambient);
    RingElement tt = free_generator(t.ambient);
    std::vector<RingMatrix> psim;
    for (int d = base->lo(); d <= base->hi(); ++d)
        psim.push_back(tt * mono.f.component(d) -
                       RingMatrix::identity(t.ambient, base->rank(d)));
    ChainMap psi(base, base, std::move(psim));
    return InducedTorus{base, std::move(psi), std::move(mono)};
}

}  // namespace

BasedComplex mapping_torus(const TorusSpec& t) {
    if (!t.validates()) throw input_error("mapping_torus: invalid torus data");
    return mapping_cone(induce_torus(t).psi);
}

TorsionReport torus_vanishing_check(const TorusSpec& t, const EquivalencePack& g,
                                    const ChainHomotopy& comm) {
    if (!t.validates()) throw input_error("torus_vanishing_check: invalid torus data");
    if (!g.is_self_pack() || !(*g.f.source() == *t.fiber))
        throw input_error("torus_vanishing_check: g must be a self-pack on the fiber");
    if (!g.validates()) throw input_error("torus_vanishing_check: invalid pack");
    InducedTorus it = induce_torus(t);
    EquivalencePack gbar = induce_pack(g, it.base, t.ambient);
    RingElement tt = free_generator(t.ambient);
    std::vector<RingMatrix> sigma;
    for (int d = it.base->lo(); d <= it.base->hi(); ++d)
        sigma.push_back(tt * induce_matrix(comm.component(d), t.ambient));
    K1Class cls = induced_cone_torsion(it.psi, gbar, sigma);
    TorsionReport rep;
    rep.cls = cls;
    rep.wh = to_whitehead(cls);
    rep.trivial = rep.wh.is_trivial();
    rep.caveats.push_back(sk1_caveat(t.ambient));
    return rep;
}

}  // namespace torsionkit
