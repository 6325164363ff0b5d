#pragma once

#include <string>
#include <vector>

#include "torsionkit/chains.hpp"

namespace torsionkit {

// Torsion value in K1(Z[G]), represented by its determinant.  SK1 is not
// modeled; construction certifies that det is a unit.
class K1Class {
  public:
    K1Class() = default;
    K1Class(RingElement det, GroupSpec over);

    const RingElement& det() const { return det_; }
    const GroupSpec& over() const { return over_; }
    bool is_det_one() const { return det_.is_one(); }

    friend K1Class operator*(const K1Class& a, const K1Class& b);
    bool operator==(const K1Class&) const = default;

  private:
    RingElement det_;
    GroupSpec over_;
};

// Whitehead class: the determinant reduced modulo trivial units +-g.
// canonical() is the unique normal form in the orbit: Laurent support
// shifted to minimal exponent 0, then the least element (in the frozen
// total order) among the sign/torsion-shift associates.
class WhClass {
  public:
    WhClass() = default;
    explicit WhClass(const K1Class& c);

    const RingElement& canonical() const { return canonical_; }
    bool is_trivial() const { return canonical_.is_one(); }
    bool operator==(const WhClass&) const = default;

  private:
    RingElement canonical_;
};

K1Class gersten_torsion(const EquivalencePack& p);
WhClass to_whitehead(const K1Class& c);

// Report of a torsion computation, JSON-facing.
struct TorsionReport {
    K1Class cls;
    WhClass wh;
    bool trivial = false;  // meaning depends on the check that produced it
    std::vector<std::string> caveats;
};

// Swindle verifier: f and g commuting self-equivalence packs on the same
// complex, comm a homotopy between (g f, f g).  Builds the self-equivalence
// [[g, comm],[0, g]] induced by g on cone(f) and computes its Gersten
// torsion; trivial means determinant exactly 1.
TorsionReport swindle_check(const EquivalencePack& f, const EquivalencePack& g,
                            const ChainHomotopy& comm);

// Mapping torus data: fiber over Z[H], monodromy pack on the fiber, ambient
// group H x Z (one free factor appended to H).
struct TorusSpec {
    ComplexPtr fiber;
    EquivalencePack monodromy;
    GroupSpec ambient;

    bool validates() const;
};

GroupSpec extend_by_free_factor(const GroupSpec& spec);
RingElement induce_element(const RingElement& x, const GroupSpec& ambient);
RingMatrix induce_matrix(const RingMatrix& m, const GroupSpec& ambient);
BasedComplex induce_complex(const BasedComplex& c, const GroupSpec& ambient);

// cone(t·m - 1) on the fiber complex induced up along Z[H] -> Z[H x Z].
BasedComplex mapping_torus(const TorusSpec& t);

// Vanishing verifier: g a self-equivalence pack on the fiber, comm a
// homotopy between (g m, m g).  Builds the induced self-equivalence of the
// mapping torus and checks its Gersten torsion reduces to the trivial
// Whitehead class.
TorsionReport torus_vanishing_check(const TorusSpec& t, const EquivalencePack& g,
                                    const ChainHomotopy& comm);

// Internal building block shared by the two verifiers: the torsion of the
// self-map [[chi, sigma],[0, chi]] of cone(phi), where chi is an equivalence
// pack, phi any chain self-map on the same complex, and sigma satisfies
// d sigma + sigma d = chi phi - phi chi.  The contraction of the double cone
// is assembled from chi's witnesses through the extension
// 0 -> cone(chi) -> cone(H) -> cone(chi)[1] -> 0.
K1Class induced_cone_torsion(const ChainMap& phi, const EquivalencePack& chi,
                             const std::vector<RingMatrix>& sigma);

}  // namespace torsionkit
