#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torsionkit/errors.hpp"

namespace torsionkit {

using BigInt = boost::multiprecision::cpp_int;

// Finitely generated abelian group Z^r x Z/n_1 x ... x Z/n_k.
struct GroupSpec {
    int free_rank = 0;
    std::vector<std::int64_t> torsion_orders;

    GroupSpec() = default;
    GroupSpec(int r, std::vector<std::int64_t> torsion);

    bool operator==(const GroupSpec&) const = default;
    std::string describe() const;
};

// Group element, stored with reduced torsion residues.
struct GroupElement {
    std::vector<std::int64_t> free_exponents;
    std::vector<std::int64_t> torsion_residues;

    static GroupElement identity(const GroupSpec& spec);

    bool is_identity() const;
    auto operator<=>(const GroupElement&) const = default;
};

GroupElement ge_mul(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement ge_inverse(const GroupSpec& spec, const GroupElement& a);

// Element of the integral group ring Z[G].  Terms are kept in lexicographic
// order on (free_exponents, torsion_residues); zero coefficients are never
// stored, so the representation is canonical.
class RingElement {
  public:
    RingElement() = default;
    explicit RingElement(GroupSpec spec) : spec_(std::move(spec)) {}

    static RingElement zero(const GroupSpec& spec);
    static RingElement one(const GroupSpec& spec);
    static RingElement monomial(const GroupSpec& spec, const GroupElement& g, const BigInt& coeff);
    static RingElement constant(const GroupSpec& spec, const BigInt& c);

    const GroupSpec& spec() const { return spec_; }
    const std::map<GroupElement, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t support_size() const { return terms_.size(); }

    void add_term(const GroupElement& g, const BigInt& coeff);

    RingElement operator-() const;
    RingElement& operator+=(const RingElement& rhs);
    RingElement& operator-=(const RingElement& rhs);

    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const BigInt& c, RingElement a);

    bool operator==(const RingElement&) const = default;

    std::string to_string() const;

  private:
    GroupSpec spec_;
    std::map<GroupElement, BigInt> terms_;
};

RingElement gr_mul(const RingElement& a, const RingElement& b);

// u has singleton support with coefficient +-1.
bool is_trivial_unit(const RingElement& u);

// Inverse search.  Trivial units invert directly; otherwise the unit must be
// supported on a single free-exponent coset (every unit of these group rings
// is), and the torsion part is inverted by solving the integer linear system
// u*v = 1 against the regular representation of the finite torsion group.
// support_bound caps the candidate support; 0 means the full torsion coset.
// NotFound (nullopt) is not a proof of non-invertibility.
std::optional<RingElement> gr_inverse(const RingElement& u, std::size_t support_bound = 0);

// Deterministic total order used for canonical-form selection.
bool ring_element_less(const RingElement& a, const RingElement& b);

// All elements of the finite torsion subgroup, lexicographic residue order.
std::vector<GroupElement> torsion_elements(const GroupSpec& spec);

// Matrix over a group ring.  Zero rows/cols are permitted so that boundary
// matrices of complexes with empty degrees stay well-typed.
class RingMatrix {
  public:
    RingMatrix() = default;
    RingMatrix(GroupSpec spec, std::size_t rows, std::size_t cols);

    static RingMatrix identity(const GroupSpec& spec, std::size_t n);
    static RingMatrix zero(const GroupSpec& spec, std::size_t rows, std::size_t cols);

    const GroupSpec& spec() const { return spec_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RingElement& at(std::size_t i, std::size_t j);
    const RingElement& at(std::size_t i, std::size_t j) const;

    bool is_zero() const;

    RingMatrix operator-() const;
    friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b);
    friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b);
    friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
    friend RingMatrix operator*(const RingElement& c, RingMatrix a);

    bool operator==(const RingMatrix&) const = default;

  private:
    GroupSpec spec_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RingElement> entries_;
};

// Exact determinant of a square matrix over the (commutative) group ring.
// Division-free: memoized cofactor expansion for small sizes, Bird's
// algorithm beyond.  Bareiss-style exact division is not available here
// because Z[G] has zero divisors once G has torsion.
RingElement gr_det(const RingMatrix& m);

void require_same_spec(const GroupSpec& a, const GroupSpec& b, const char* what);

}  // namespace torsionkit
