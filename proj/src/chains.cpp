#include "torsionkit/chains.hpp"

#include <algorithm>

namespace torsionkit {

namespace {

int parity(int k) { return ((k % 2) + 2) % 2; }

void embed_block(RingMatrix& dst, const RingMatrix& block, std::size_t row_off,
                 std::size_t col_off) {
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
            if (!block.at(i, j).is_zero()) dst.at(row_off + i, col_off + j) = block.at(i, j);
}

}  // namespace

BasedComplex::BasedComplex(GroupSpec spec, int lo, std::vector<std::size_t> ranks,
                           std::vector<RingMatrix> diffs)
    : spec_(std::move(spec)), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
    if (ranks_.empty()) throw input_error("BasedComplex: empty degree range");
    if (diffs_.size() + 1 != ranks_.size())
        throw input_error("BasedComplex: need one differential per adjacent degree pair");
    if (!shapes_ok()) throw input_error("BasedComplex: differential shape mismatch");
}

std::size_t BasedComplex::rank(int k) const {
    if (k < lo_ || k > hi()) return 0;
    return ranks_[static_cast<std::size_t>(k - lo_)];
}

RingMatrix BasedComplex::diff(int k) const {
    if (k <= lo_ || k > hi()) return RingMatrix::zero(spec_, rank(k - 1), rank(k));
    return diffs_[static_cast<std::size_t>(k - lo_ - 1)];
}

std::size_t BasedComplex::total_rank() const {
    std::size_t t = 0;
    for (auto r : ranks_) t += r;
    return t;
}

bool BasedComplex::shapes_ok() const {
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
        if (!(diffs_[i].spec() == spec_)) return false;
        if (diffs_[i].rows() != ranks_[i] || diffs_[i].cols() != ranks_[i + 1]) return false;
    }
    return true;
}

bool validate_complex(const BasedComplex& c) {
    if (!c.shapes_ok()) throw input_error("validate_complex: shape mismatch");
    for (int k = c.lo() + 2; k <= c.hi(); ++k)
        if (!(c.diff(k - 1) * c.diff(k)).is_zero()) return false;
    return true;
}

ChainMap::ChainMap(ComplexPtr source, ComplexPtr target, std::vector<RingMatrix> comps)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {
    if (!source_ || !target_) throw input_error("ChainMap: null complex");
    if (source_->lo() != target_->lo() || source_->hi() != target_->hi())
        throw input_error("ChainMap: source and target must share a degree range");
    if (comps_.size() != source_->ranks().size())
        throw input_error("ChainMap: need one component per degree");
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        int k = source_->lo() + static_cast<int>(i);
        if (comps_[i].rows() != target_->rank(k) || comps_[i].cols() != source_->rank(k))
            throw input_error("ChainMap: component shape mismatch in degree " + std::to_string(k));
    }
}

ChainMap ChainMap::identity(ComplexPtr c) {
    std::vector<RingMatrix> comps;
    for (int k = c->lo(); k <= c->hi(); ++k)
        comps.push_back(RingMatrix::identity(c->spec(), c->rank(k)));
    return ChainMap(c, c, std::move(comps));
}

ChainMap ChainMap::zero(ComplexPtr source, ComplexPtr target) {
    std::vector<RingMatrix> comps;
    for (int k = source->lo(); k <= source->hi(); ++k)
        comps.push_back(RingMatrix::zero(source->spec(), target->rank(k), source->rank(k)));
    return ChainMap(source, target, std::move(comps));
}

ChainMap ChainMap::scalar(ComplexPtr c, const RingElement& u) {
    std::vector<RingMatrix> comps;
    for (int k = c->lo(); k <= c->hi(); ++k)
        comps.push_back(u * RingMatrix::identity(c->spec(), c->rank(k)));
    return ChainMap(c, c, std::move(comps));
}

RingMatrix ChainMap::component(int k) const {
    if (k < source_->lo() || k > source_->hi())
        return RingMatrix::zero(source_->spec(), target_->rank(k), source_->rank(k));
    return comps_[static_cast<std::size_t>(k - source_->lo())];
}

bool ChainMap::validates() const {
    for (int k = source_->lo() + 1; k <= source_->hi(); ++k)
        if (!(target_->diff(k) * component(k) - component(k - 1) * source_->diff(k)).is_zero())
            return false;
    return true;
}

bool ChainMap::is_self_map() const {
    return source_ == target_ || *source_ == *target_;
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
    std::vector<RingMatrix> comps;
    for (int k = a.source_->lo(); k <= a.source_->hi(); ++k)
        comps.push_back(a.component(k) + b.component(k));
    return ChainMap(a.source_, a.target_, std::move(comps));
}

ChainMap operator-(const ChainMap& a, const ChainMap& b) {
    std::vector<RingMatrix> comps;
    for (int k = a.source_->lo(); k <= a.source_->hi(); ++k)
        comps.push_back(a.component(k) - b.component(k));
    return ChainMap(a.source_, a.target_, std::move(comps));
}

ChainMap ChainMap::operator-() const {
    std::vector<RingMatrix> comps;
    for (const auto& m : comps_) comps.push_back(-m);
    return ChainMap(source_, target_, std::move(comps));
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    if (!(*g.target() == *f.source())) throw input_error("compose: maps are not composable");
    std::vector<RingMatrix> comps;
    for (int k = g.source()->lo(); k <= g.source()->hi(); ++k)
        comps.push_back(f.component(k) * g.component(k));
    return ChainMap(g.source(), f.target(), std::move(comps));
}

ChainHomotopy::ChainHomotopy(ChainMap first, ChainMap second, std::vector<RingMatrix> comps)
    : first_(std::move(first)), second_(std::move(second)), comps_(std::move(comps)) {
    if (!(*first_.source() == *second_.source()) || !(*first_.target() == *second_.target()))
        throw input_error("ChainHomotopy: maps must share source and target");
    if (comps_.size() != first_.source()->ranks().size())
        throw input_error("ChainHomotopy: need one component per degree");
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        int k = first_.source()->lo() + static_cast<int>(i);
        if (comps_[i].rows() != first_.target()->rank(k + 1) ||
            comps_[i].cols() != first_.source()->rank(k))
            throw input_error("ChainHomotopy: component shape mismatch in degree " +
                              std::to_string(k));
    }
}

ChainHomotopy ChainHomotopy::zero(const ChainMap& first, const ChainMap& second) {
    std::vector<RingMatrix> comps;
    for (int k = first.source()->lo(); k <= first.source()->hi(); ++k)
        comps.push_back(RingMatrix::zero(first.source()->spec(), first.target()->rank(k + 1),
                                         first.source()->rank(k)));
    return ChainHomotopy(first, second, std::move(comps));
}

RingMatrix ChainHomotopy::component(int k) const {
    if (k < source()->lo() || k > source()->hi())
        return RingMatrix::zero(source()->spec(), target()->rank(k + 1), source()->rank(k));
    return comps_[static_cast<std::size_t>(k - source()->lo())];
}

bool ChainHomotopy::validates() const {
    const auto& src = *source();
    const auto& tgt = *target();
    for (int k = src.lo(); k <= src.hi(); ++k) {
        RingMatrix lhs = tgt.diff(k + 1) * component(k) + component(k - 1) * src.diff(k);
        RingMatrix rhs = first_.component(k) - second_.component(k);
        if (!(lhs - rhs).is_zero()) return false;
    }
    return true;
}

Contraction::Contraction(ComplexPtr complex, std::vector<RingMatrix> delta)
    : complex_(std::move(complex)), delta_(std::move(delta)) {
    if (delta_.size() != complex_->ranks().size())
        throw input_error("Contraction: need one component per degree");
    for (std::size_t i = 0; i < delta_.size(); ++i) {
        int k = complex_->lo() + static_cast<int>(i);
        if (delta_[i].rows() != complex_->rank(k + 1) || delta_[i].cols() != complex_->rank(k))
            throw input_error("Contraction: component shape mismatch in degree " +
                              std::to_string(k));
    }
}

RingMatrix Contraction::component(int k) const {
    if (k < complex_->lo() || k > complex_->hi())
        return RingMatrix::zero(complex_->spec(), complex_->rank(k + 1), complex_->rank(k));
    return delta_[static_cast<std::size_t>(k - complex_->lo())];
}

bool Contraction::validates() const {
    const auto& c = *complex_;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        RingMatrix lhs = c.diff(k + 1) * component(k) + component(k - 1) * c.diff(k);
        if (!(lhs - RingMatrix::identity(c.spec(), c.rank(k))).is_zero()) return false;
    }
    return true;
}

bool EquivalencePack::validates() const {
    if (!f.validates() || !g.validates()) return false;
    if (!(*f.source() == *g.target()) || !(*f.target() == *g.source())) return false;
    if (!h.validates() || !k.validates()) return false;
    // orientation: h between (f g, id), k between (g f, id)
    ChainMap fg = compose(f, g), gf = compose(g, f);
    ChainMap id_t = ChainMap::identity(f.target()), id_s = ChainMap::identity(f.source());
    for (int d = f.source()->lo(); d <= f.source()->hi(); ++d) {
        if (!(h.first().component(d) - fg.component(d)).is_zero()) return false;
        if (!(h.second().component(d) - id_t.component(d)).is_zero()) return false;
        if (!(k.first().component(d) - gf.component(d)).is_zero()) return false;
        if (!(k.second().component(d) - id_s.component(d)).is_zero()) return false;
    }
    return true;
}

bool EquivalencePack::is_self_pack() const { return f.is_self_map(); }

EquivalencePack make_pack(ChainMap f, ChainMap g, ChainHomotopy h, ChainHomotopy k) {
    EquivalencePack p{std::move(f), std::move(g), std::move(h), std::move(k)};
    if (!p.validates()) throw input_error("make_pack: equivalence pack fails validation");
    return p;
}

EquivalencePack identity_pack(ComplexPtr c) {
    ChainMap id = ChainMap::identity(c);
    ChainHomotopy z = ChainHomotopy::zero(compose(id, id), id);
    return EquivalencePack{id, id, z, z};
}

EquivalencePack scalar_pack(ComplexPtr c, const RingElement& u) {
    auto inv = gr_inverse(u);
    if (!inv) throw input_error("scalar_pack: scalar is not a certified unit");
    ChainMap f = ChainMap::scalar(c, u);
    ChainMap g = ChainMap::scalar(c, *inv);
    ChainMap id = ChainMap::identity(c);
    ChainHomotopy h = ChainHomotopy::zero(compose(f, g), id);
    ChainHomotopy k = ChainHomotopy::zero(compose(g, f), id);
    return EquivalencePack{f, g, h, k};
}

EquivalencePack compose_packs(const EquivalencePack& p, const EquivalencePack& q) {
    // composite runs q first, then p
    ChainMap f = compose(p.f, q.f);
    ChainMap g = compose(q.g, p.g);
    const ComplexPtr& src = q.f.source();
    const ComplexPtr& tgt = p.f.target();
    std::vector<RingMatrix> hm, km;
    for (int d = tgt->lo(); d <= tgt->hi(); ++d)
        hm.push_back(p.f.component(d + 1) * q.h.component(d) * p.g.component(d) +
                     p.h.component(d));
    for (int d = src->lo(); d <= src->hi(); ++d)
        km.push_back(q.g.component(d + 1) * p.k.component(d) * q.f.component(d) +
                     q.k.component(d));
    ChainHomotopy h(compose(f, g), ChainMap::identity(tgt), std::move(hm));
    ChainHomotopy k(compose(g, f), ChainMap::identity(src), std::move(km));
    return EquivalencePack{std::move(f), std::move(g), std::move(h), std::move(k)};
}

BasedComplex mapping_cone(const ChainMap& f) {
    if (!f.validates()) throw input_error("mapping_cone: map does not commute with differentials");
    const auto& c = *f.source();
    const auto& d = *f.target();
    const GroupSpec& spec = c.spec();
    int lo = c.lo(), hi = c.hi() + 1;
    std::vector<std::size_t> ranks;
    for (int k = lo; k <= hi; ++k) ranks.push_back(d.rank(k) + c.rank(k - 1));
    std::vector<RingMatrix> diffs;
    for (int k = lo + 1; k <= hi; ++k) {
        RingMatrix m(spec, d.rank(k - 1) + c.rank(k - 2), d.rank(k) + c.rank(k - 1));
        embed_block(m, d.diff(k), 0, 0);
        embed_block(m, f.component(k - 1), 0, d.rank(k));
        embed_block(m, -c.diff(k - 1), d.rank(k - 1), d.rank(k));
        diffs.push_back(std::move(m));
    }
    return BasedComplex(spec, lo, std::move(ranks), std::move(diffs));
}

Contraction cone_contraction(const EquivalencePack& p) {
    if (!p.validates()) throw contraction_failure("cone_contraction: invalid equivalence pack");
    auto cone = std::make_shared<const BasedComplex>(mapping_cone(p.f));
    const auto& c = *p.f.source();
    const auto& d = *p.f.target();

    struct DegreePlus1 {
        const ComplexPtr src;
        std::vector<RingMatrix> comps;  // comps[i] : C_{lo+i} -> C_{lo+i+1}
        RingMatrix component(int n) const {
            if (n < src->lo() || n > src->hi())
                return RingMatrix::zero(src->spec(), src->rank(n + 1), src->rank(n));
            return comps[static_cast<std::size_t>(n - src->lo())];
        }
    };

    DegreePlus1 k1{p.f.source(), {}};
    for (int n = c.lo(); n <= c.hi(); ++n) k1.comps.push_back(p.k.component(n));

    auto build = [&](const DegreePlus1& kc, const std::vector<RingMatrix>* bb) {
        std::vector<RingMatrix> delta;
        for (int n = cone->lo(); n <= cone->hi(); ++n) {
            RingMatrix m(c.spec(), d.rank(n + 1) + c.rank(n), d.rank(n) + c.rank(n - 1));
            embed_block(m, -p.h.component(n), 0, 0);
            embed_block(m, p.g.component(n), d.rank(n + 1), 0);
            embed_block(m, kc.component(n - 1), d.rank(n + 1), d.rank(n));
            if (bb) {
                int idx = n - 1 - c.lo();
                if (idx >= 0 && idx < static_cast<int>(bb->size()))
                    embed_block(m, (*bb)[static_cast<std::size_t>(idx)], 0, d.rank(n));
            }
            delta.push_back(std::move(m));
        }
        return Contraction(cone, std::move(delta));
    };

    Contraction raw = build(k1, nullptr);
    if (raw.validates()) return raw;

    // corrected homotopy: k' = g h f + k - g f k, plus block B = h (f k - h f)
    DegreePlus1 k2{p.f.source(), {}};
    std::vector<RingMatrix> bb;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        RingMatrix ghf = p.g.component(n + 1) * p.h.component(n) * p.f.component(n);
        RingMatrix gfk = p.g.component(n + 1) * p.f.component(n + 1) * p.k.component(n);
        k2.comps.push_back(ghf + p.k.component(n) - gfk);
        RingMatrix fk = p.f.component(n + 1) * p.k.component(n);
        RingMatrix hf = p.h.component(n) * p.f.component(n);
        bb.push_back(p.h.component(n + 1) * (fk - hf));
    }
    Contraction corrected = build(k2, &bb);
    if (corrected.validates()) return corrected;
    throw contraction_failure("cone_contraction: corrected candidate fails; invalid pack");
}

RingElement torsion_of_acyclic(const BasedComplex& c, const Contraction& delta) {
    if (!(*delta.complex() == c))
        throw input_error("torsion_of_acyclic: contraction belongs to a different complex");
    if (!delta.validates())
        throw input_error("torsion_of_acyclic: delta is not a contraction");

    std::size_t n_odd = 0, n_even = 0;
    for (int k = c.lo(); k <= c.hi(); ++k)
        (parity(k) ? n_odd : n_even) += c.rank(k);
    if (n_odd != n_even)
        throw input_error("torsion_of_acyclic: odd/even ranks differ; based ranks not acyclic");

    // row offsets of each even degree, column offsets of each odd degree
    std::vector<std::size_t> row_off(static_cast<std::size_t>(c.hi() - c.lo() + 1), 0);
    std::vector<std::size_t> col_off(row_off.size(), 0);
    std::size_t r = 0, q = 0;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        std::size_t i = static_cast<std::size_t>(k - c.lo());
        if (parity(k)) {
            col_off[i] = q;
            q += c.rank(k);
        } else {
            row_off[i] = r;
            r += c.rank(k);
        }
    }

    RingMatrix m(c.spec(), n_even, n_odd);
    for (int k = c.lo(); k <= c.hi(); ++k) {
        if (!parity(k)) continue;
        std::size_t co = col_off[static_cast<std::size_t>(k - c.lo())];
        if (k - 1 >= c.lo())
            embed_block(m, c.diff(k), row_off[static_cast<std::size_t>(k - 1 - c.lo())], co);
        if (k + 1 <= c.hi())
            embed_block(m, delta.component(k), row_off[static_cast<std::size_t>(k + 1 - c.lo())],
                        co);
    }
    return gr_det(m);
}

int id_cone_sign(const std::vector<std::size_t>& ranks, int lo) {
    // cone(id) basis at degree n: D-block (n,i), then C-block representing
    // C_{n-1}.  At d = 0 the torsion matrix is the permutation sending a
    // D-element of odd degree n to its C-partner in degree n+1, and a
    // C-element of odd degree n to its D-partner in degree n-1.
    auto rank = [&](int k) -> std::size_t {
        if (k < lo || k >= lo + static_cast<int>(ranks.size())) return 0;
        return ranks[static_cast<std::size_t>(k - lo)];
    };
    int hi = lo + static_cast<int>(ranks.size());  // cone top degree
    struct Key {
        int degree;
        int block;  // 0 = D, 1 = C
        std::size_t index;
        bool operator==(const Key&) const = default;
    };
    std::vector<Key> odd, even;
    for (int n = lo; n <= hi; ++n) {
        auto& side = parity(n) ? odd : even;
        for (std::size_t i = 0; i < rank(n); ++i) side.push_back({n, 0, i});
        for (std::size_t i = 0; i < rank(n - 1); ++i) side.push_back({n, 1, i});
    }
    auto find_in = [](const std::vector<Key>& v, const Key& k) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == k) return i;
        throw contract_error("id_cone_sign: pairing target missing");
    };
    std::vector<std::size_t> perm;
    perm.reserve(odd.size());
    for (const auto& k : odd) {
        Key target = k.block == 0 ? Key{k.degree + 1, 1, k.index} : Key{k.degree - 1, 0, k.index};
        perm.push_back(find_in(even, target));
    }
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

RingElement whitehead_torsion_det(const EquivalencePack& p) {
    BasedComplex cone = mapping_cone(p.f);
    Contraction delta = cone_contraction(p);
    RingElement raw = torsion_of_acyclic(cone, delta);
    int sign = id_cone_sign(p.f.source()->ranks(), p.f.source()->lo());
    return sign > 0 ? raw : -raw;
}

}  // namespace torsionkit
