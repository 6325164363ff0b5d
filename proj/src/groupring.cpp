#include "torsionkit/groupring.hpp"

#include <algorithm>
#include <sstream>

#include "torsionkit/intmat.hpp"

namespace torsionkit {

GroupSpec::GroupSpec(int r, std::vector<std::int64_t> torsion)
    : free_rank(r), torsion_orders(std::move(torsion)) {
    if (free_rank < 0)
        throw input_error("GroupSpec: free rank must be non-negative");
    for (auto n : torsion_orders)
        if (n < 2)
            throw input_error("GroupSpec: torsion orders must be >= 2");
}

std::string GroupSpec::describe() const {
    std::ostringstream os;
    os << "Z^" << free_rank;
    for (auto n : torsion_orders) os << " x Z/" << n;
    return os.str();
}

void require_same_spec(const GroupSpec& a, const GroupSpec& b, const char* what) {
    if (!(a == b))
        throw input_error(std::string(what) + ": mismatched group specs (" + a.describe() +
                          " vs " + b.describe() + ")");
}

GroupElement GroupElement::identity(const GroupSpec& spec) {
    GroupElement e;
    e.free_exponents.assign(spec.free_rank, 0);
    e.torsion_residues.assign(spec.torsion_orders.size(), 0);
    return e;
}

bool GroupElement::is_identity() const {
    auto all_zero = [](const std::vector<std::int64_t>& v) {
        return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
    };
    return all_zero(free_exponents) && all_zero(torsion_residues);
}

static std::int64_t mod_reduce(std::int64_t x, std::int64_t n) {
    std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

GroupElement ge_mul(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    GroupElement c;
    c.free_exponents.resize(spec.free_rank);
    for (int i = 0; i < spec.free_rank; ++i)
        c.free_exponents[i] = a.free_exponents[i] + b.free_exponents[i];
    c.torsion_residues.resize(spec.torsion_orders.size());
    for (std::size_t i = 0; i < spec.torsion_orders.size(); ++i)
        c.torsion_residues[i] =
            mod_reduce(a.torsion_residues[i] + b.torsion_residues[i], spec.torsion_orders[i]);
    return c;
}

GroupElement ge_inverse(const GroupSpec& spec, const GroupElement& a) {
    GroupElement c;
    c.free_exponents.resize(spec.free_rank);
    for (int i = 0; i < spec.free_rank; ++i) c.free_exponents[i] = -a.free_exponents[i];
    c.torsion_residues.resize(spec.torsion_orders.size());
    for (std::size_t i = 0; i < spec.torsion_orders.size(); ++i)
        c.torsion_residues[i] = mod_reduce(-a.torsion_residues[i], spec.torsion_orders[i]);
    return c;
}

RingElement RingElement::zero(const GroupSpec& spec) { return RingElement(spec); }

RingElement RingElement::one(const GroupSpec& spec) {
    return monomial(spec, GroupElement::identity(spec), 1);
}

RingElement RingElement::monomial(const GroupSpec& spec, const GroupElement& g,
                                  const BigInt& coeff) {
    RingElement r(spec);
    r.add_term(g, coeff);
    return r;
}

RingElement RingElement::constant(const GroupSpec& spec, const BigInt& c) {
    return monomial(spec, GroupElement::identity(spec), c);
}

bool RingElement::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_identity() &&
           terms_.begin()->second == 1;
}

void RingElement::add_term(const GroupElement& g, const BigInt& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(g);
    if (it == terms_.end()) {
        terms_.emplace(g, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

RingElement RingElement::operator-() const {
    RingElement r(spec_);
    for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
    return r;
}

RingElement& RingElement::operator+=(const RingElement& rhs) {
    require_same_spec(spec_, rhs.spec_, "RingElement::operator+=");
    for (const auto& [g, c] : rhs.terms_) add_term(g, c);
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& rhs) {
    require_same_spec(spec_, rhs.spec_, "RingElement::operator-=");
    for (const auto& [g, c] : rhs.terms_) add_term(g, -c);
    return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_spec(a.spec_, b.spec_, "gr_mul");
    RingElement r(a.spec_);
    for (const auto& [ga, ca] : a.terms_)
        for (const auto& [gb, cb] : b.terms_)
            r.add_term(ge_mul(a.spec_, ga, gb), ca * cb);
    return r;
}

RingElement operator*(const BigInt& c, RingElement a) {
    RingElement r(a.spec());
    if (c == 0) return r;
    for (const auto& [g, x] : a.terms()) r.add_term(g, c * x);
    return r;
}

RingElement gr_mul(const RingElement& a, const RingElement& b) { return a * b; }

std::string RingElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        BigInt a = abs(c);
        bool ident = g.is_identity();
        if (a != 1 || ident) os << a.str();
        if (!ident) {
            if (a != 1) os << "*";
            bool need_dot = false;
            for (std::size_t i = 0; i < g.free_exponents.size(); ++i) {
                if (g.free_exponents[i] == 0) continue;
                if (need_dot) os << ".";
                os << "t" << (g.free_exponents.size() > 1 ? std::to_string(i) : "");
                if (g.free_exponents[i] != 1) os << "^" << g.free_exponents[i];
                need_dot = true;
            }
            for (std::size_t i = 0; i < g.torsion_residues.size(); ++i) {
                if (g.torsion_residues[i] == 0) continue;
                if (need_dot) os << ".";
                os << "g" << (g.torsion_residues.size() > 1 ? std::to_string(i) : "");
                if (g.torsion_residues[i] != 1) os << "^" << g.torsion_residues[i];
                need_dot = true;
            }
            if (!need_dot) os << "1";
        }
    }
    return os.str();
}

bool is_trivial_unit(const RingElement& u) {
    if (u.support_size() != 1) return false;
    const BigInt& c = u.terms().begin()->second;
    return c == 1 || c == -1;
}

bool ring_element_less(const RingElement& a, const RingElement& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) {
            BigInt aa = abs(ia->second), ab = abs(ib->second);
            if (aa != ab) return aa < ab;
            return ia->second > 0;  // positive coefficient preferred
        }
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

std::vector<GroupElement> torsion_elements(const GroupSpec& spec) {
    std::vector<GroupElement> out;
    GroupElement g = GroupElement::identity(spec);
    std::size_t k = spec.torsion_orders.size();
    while (true) {
        out.push_back(g);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++g.torsion_residues[i] < spec.torsion_orders[i]) break;
            g.torsion_residues[i] = 0;
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

std::optional<RingElement> gr_inverse(const RingElement& u, std::size_t support_bound) {
    const GroupSpec& spec = u.spec();
    if (u.is_zero()) return std::nullopt;
    if (is_trivial_unit(u)) {
        const auto& [g, c] = *u.terms().begin();
        return RingElement::monomial(spec, ge_inverse(spec, g), c);
    }

    // A unit of Z[Z^r x T] is x^a * u0 with u0 a unit of Z[T] (the ring is
    // reduced with connected spectrum), so the free exponents of a unit form
    // a single vector.
    const auto& first_free = u.terms().begin()->first.free_exponents;
    for (const auto& [g, c] : u.terms())
        if (g.free_exponents != first_free) return std::nullopt;

    std::vector<GroupElement> tg = torsion_elements(spec);
    const std::size_t n = tg.size();
    if (support_bound != 0 && support_bound < u.support_size()) return std::nullopt;

    std::map<GroupElement, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        GroupElement key = tg[i];
        index.emplace(key, i);
    }
    auto torsion_index = [&](const GroupElement& g) {
        GroupElement key = GroupElement::identity(spec);
        key.torsion_residues = g.torsion_residues;
        return index.at(key);
    };

    // Regular representation of the torsion part: column j of M is u0 * t_j.
    IntMat m(n, IntVec(n, 0));
    for (const auto& [g, c] : u.terms()) {
        for (std::size_t j = 0; j < n; ++j) {
            GroupElement prod = ge_mul(spec, g, tg[j]);
            m[torsion_index(prod)][j] += c;
        }
    }
    IntVec e(n, 0);
    e[0] = 1;  // identity is first in lexicographic order
    auto sol = int_solve(m, e);
    if (!sol) return std::nullopt;

    GroupElement shift = GroupElement::identity(spec);
    shift.free_exponents = first_free;
    GroupElement shift_inv = ge_inverse(spec, shift);
    RingElement v(spec);
    for (std::size_t j = 0; j < n; ++j)
        if ((*sol)[j] != 0) v.add_term(ge_mul(spec, tg[j], shift_inv), (*sol)[j]);
    if (!(u * v).is_one()) return std::nullopt;
    return v;
}

RingMatrix::RingMatrix(GroupSpec spec, std::size_t rows, std::size_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols) {
    entries_.assign(rows_ * cols_, RingElement(spec_));
}

RingMatrix RingMatrix::identity(const GroupSpec& spec, std::size_t n) {
    RingMatrix m(spec, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RingElement::one(spec);
    return m;
}

RingMatrix RingMatrix::zero(const GroupSpec& spec, std::size_t rows, std::size_t cols) {
    return RingMatrix(spec, rows, cols);
}

RingElement& RingMatrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw contract_error("RingMatrix::at out of range");
    return entries_[i * cols_ + j];
}

const RingElement& RingMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw contract_error("RingMatrix::at out of range");
    return entries_[i * cols_ + j];
}

bool RingMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const RingElement& e) { return e.is_zero(); });
}

RingMatrix RingMatrix::operator-() const {
    RingMatrix m(spec_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = -entries_[i];
    return m;
}

RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
    require_same_spec(a.spec_, b.spec_, "RingMatrix::operator+");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw input_error("RingMatrix::operator+: shape mismatch");
    RingMatrix m = a;
    for (std::size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] += b.entries_[i];
    return m;
}

RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
    require_same_spec(a.spec_, b.spec_, "RingMatrix::operator-");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw input_error("RingMatrix::operator-: shape mismatch");
    RingMatrix m = a;
    for (std::size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] -= b.entries_[i];
    return m;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
    require_same_spec(a.spec_, b.spec_, "RingMatrix::operator*");
    if (a.cols_ != b.rows_) throw input_error("RingMatrix::operator*: shape mismatch");
    RingMatrix m(a.spec_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const RingElement& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const RingElement& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                m.at(i, j) += aik * bkj;
            }
        }
    return m;
}

RingMatrix operator*(const RingElement& c, RingMatrix a) {
    RingMatrix m(a.spec(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_zero()) m.at(i, j) = c * a.at(i, j);
    return m;
}

// Memoized Laplace expansion over column subsets: n * 2^n ring products,
// division-free, with zero entries pruned.
static RingElement det_subset_dp(const RingMatrix& m) {
    const std::size_t n = m.rows();
    const GroupSpec& spec = m.spec();
    std::vector<RingElement> cur(1, RingElement::one(spec));
    std::vector<std::uint32_t> cur_masks(1, 0);
    // Iteratively expand row by row; states are column subsets of used columns.
    std::map<std::uint32_t, RingElement> states;
    states.emplace(0u, RingElement::one(spec));
    for (std::size_t row = 0; row < n; ++row) {
        std::map<std::uint32_t, RingElement> next;
        for (const auto& [mask, val] : states) {
            if (val.is_zero()) continue;
            // parity of the column's position among unused columns
            int sign = 1;
            for (std::size_t col = 0; col < n; ++col) {
                if (mask & (1u << col)) continue;
                const RingElement& a = m.at(row, col);
                if (!a.is_zero()) {
                    RingElement contrib = sign > 0 ? (val * a) : -(val * a);
                    auto [it, fresh] = next.emplace(mask | (1u << col), contrib);
                    if (!fresh) it->second += contrib;
                }
                sign = -sign;
            }
        }
        states = std::move(next);
    }
    if (states.empty()) return RingElement::zero(spec);
    return states.begin()->second;
}

// Bird's division-free determinant: X_{k+1} = mu(X_k) * A, where mu(X)
// clears the strict lower triangle and replaces each diagonal entry by minus
// the sum of the diagonal entries below it.  det(A) = (-1)^{n-1} (X_n)_{00}.
static RingElement det_bird(const RingMatrix& a) {
    const std::size_t n = a.rows();
    const GroupSpec& spec = a.spec();
    auto mu = [&](const RingMatrix& x) {
        RingMatrix y(spec, n, n);
        RingElement acc = RingElement::zero(spec);
        for (std::size_t i = n; i-- > 0;) {
            y.at(i, i) = acc.is_zero() ? RingElement::zero(spec) : -acc;
            acc += x.at(i, i);
            for (std::size_t j = i + 1; j < n; ++j) y.at(i, j) = x.at(i, j);
        }
        return y;
    };
    RingMatrix x = a;
    for (std::size_t k = 0; k + 1 < n; ++k) x = mu(x) * a;
    RingElement d = x.at(0, 0);
    return (n % 2 == 0) ? -d : d;
}

RingElement gr_det(const RingMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("gr_det: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return RingElement::one(m.spec());
    if (n <= 10) return det_subset_dp(m);
    return det_bird(m);
}

}  // namespace torsionkit
