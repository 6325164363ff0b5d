#pragma once

#include <memory>
#include <vector>

#include "torsionkit/groupring.hpp"

namespace torsionkit {

// Bounded based free chain complex over Z[G].  ranks[i] is the rank in
// degree lo+i; diffs[i] is d_{lo+1+i} : C_{lo+1+i} -> C_{lo+i}, a matrix of
// shape ranks[i] x ranks[i+1].
class BasedComplex {
  public:
    BasedComplex() = default;
    BasedComplex(GroupSpec spec, int lo, std::vector<std::size_t> ranks,
                 std::vector<RingMatrix> diffs);

    const GroupSpec& spec() const { return spec_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    const std::vector<std::size_t>& ranks() const { return ranks_; }

    std::size_t rank(int k) const;
    // d_k : C_k -> C_{k-1}; zero-shaped outside the stored range.
    RingMatrix diff(int k) const;
    std::size_t total_rank() const;

    bool shapes_ok() const;

    bool operator==(const BasedComplex&) const = default;

  private:
    GroupSpec spec_;
    int lo_ = 0;
    std::vector<std::size_t> ranks_;
    std::vector<RingMatrix> diffs_;
};

using ComplexPtr = std::shared_ptr<const BasedComplex>;

// true iff all composites d(k) d(k+1) vanish (shapes are checked first).
bool validate_complex(const BasedComplex& c);

// Degreewise map data shared by chain maps, homotopies and contractions.
// comps[i] is the component out of degree lo+i of the source complex.
class ChainMap {
  public:
    ChainMap() = default;
    ChainMap(ComplexPtr source, ComplexPtr target, std::vector<RingMatrix> comps);

    static ChainMap identity(ComplexPtr c);
    static ChainMap zero(ComplexPtr source, ComplexPtr target);
    static ChainMap scalar(ComplexPtr c, const RingElement& u);

    const ComplexPtr& source() const { return source_; }
    const ComplexPtr& target() const { return target_; }
    // component C_k -> D_k (zero-shaped outside the range)
    RingMatrix component(int k) const;

    bool validates() const;  // commutes with differentials degreewise
    bool is_self_map() const;

    friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
    friend ChainMap operator-(const ChainMap& a, const ChainMap& b);
    friend ChainMap compose(const ChainMap& f, const ChainMap& g);  // f after g
    ChainMap operator-() const;

  private:
    ComplexPtr source_, target_;
    std::vector<RingMatrix> comps_;
};

// Degree +1 homotopy between the ordered pair (first, second):
// d h + h d = first - second.
class ChainHomotopy {
  public:
    ChainHomotopy() = default;
    ChainHomotopy(ChainMap first, ChainMap second, std::vector<RingMatrix> comps);

    static ChainHomotopy zero(const ChainMap& first, const ChainMap& second);

    const ChainMap& first() const { return first_; }
    const ChainMap& second() const { return second_; }
    RingMatrix component(int k) const;  // C_k -> D_{k+1}
    const ComplexPtr& source() const { return first_.source(); }
    const ComplexPtr& target() const { return first_.target(); }

    bool validates() const;

  private:
    ChainMap first_, second_;
    std::vector<RingMatrix> comps_;
};

// Degree +1 operator with d delta + delta d = id.
class Contraction {
  public:
    Contraction() = default;
    Contraction(ComplexPtr complex, std::vector<RingMatrix> delta);

    const ComplexPtr& complex() const { return complex_; }
    RingMatrix component(int k) const;  // C_k -> C_{k+1}

    bool validates() const;

  private:
    ComplexPtr complex_;
    std::vector<RingMatrix> delta_;
};

// Chain-level witness of a homotopy equivalence: g is a homotopy inverse of
// f, h : f g ~ id_target, k : g f ~ id_source.
struct EquivalencePack {
    ChainMap f, g;
    ChainHomotopy h, k;

    bool validates() const;
    bool is_self_pack() const;
};

// Validating constructor; throws input_error on any failing witness.
EquivalencePack make_pack(ChainMap f, ChainMap g, ChainHomotopy h, ChainHomotopy k);
EquivalencePack identity_pack(ComplexPtr c);
// pack of u * id for a certified unit u
EquivalencePack scalar_pack(ComplexPtr c, const RingElement& u);
// pack of p.f ∘ q.f with witnesses composed from p and q
EquivalencePack compose_packs(const EquivalencePack& p, const EquivalencePack& q);

// Mapping cone of f : C -> D, degrees [lo, hi+1], cone_k = D_k ⊕ C_{k-1}
// (D-block first), differential [[d_D, f],[0, -d_C]].
BasedComplex mapping_cone(const ChainMap& f);

// Contraction of cone(f) assembled from the pack.  The raw candidate is
// [[-h, 0],[g, k]]; when the side condition f k = h f fails, k is replaced
// by g h f + k - g f k and the block h(f k - h f) is added, which always
// satisfies the contraction identity for a valid pack.
Contraction cone_contraction(const EquivalencePack& p);

// K1 class of an acyclic based complex: determinant of (d + delta) from odd
// to even total degree, bases concatenated in ascending degree.  Raw class,
// no normalization.
RingElement torsion_of_acyclic(const BasedComplex& c, const Contraction& delta);

// Sign of the torsion of cone(id) on a complex with the given rank vector
// (ranks[i] in degree lo+i).  Purely combinatorial: the parity of the
// pairing permutation of the odd/even bases.
int id_cone_sign(const std::vector<std::size_t>& ranks, int lo);

// Whitehead torsion of an equivalence pack: torsion of cone(f) with the
// cone contraction, normalized by the sign of the identity cone so that
// tau(id) = 1 on every shape.
RingElement whitehead_torsion_det(const EquivalencePack& p);

}  // namespace torsionkit
