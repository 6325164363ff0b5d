#pragma once

#include <string>
#include <vector>

#include "torsionkit/errors.hpp"

namespace torsionkit {

// Decomposition-based verdict on |Wh(Z x Z/n)|.
struct WhReport {
    long n = 0;
    long wh_rank = 0;        // rank of Wh(Z/n)
    bool nil_infinite = false;
    bool k0_finite = true;   // always true for finite groups (Swan)
    bool total_infinite = false;
    std::vector<std::string> reasons;
};

// rank of Wh(Z/n) = floor(n/2) + 1 - d(n), d = number of divisors.
long wh_rank_cyclic(long n);

// Independent route: number of complex-conjugation orbits of characters of
// Z/n minus the number of divisors, both by direct enumeration.
long wh_rank_cyclic_oracle(long n);

// Nil_1(Z[Z/n]) is infinite iff n is not squarefree.
bool nil_infinite(long n);

// Wh(Z x Z/n) through the Bass-Heller-Swan decomposition.
WhReport bhs_is_infinite(long n);

struct SpaceSpec {
    enum class Family { LensTimesCircle, Q8TimesCircle, ProjectiveUnitary, CustomZxZn };
    Family family = Family::LensTimesCircle;
    long parameter = 0;  // p for lens, n for projective unitary / custom
};

struct StructuresReport {
    std::string verdict;  // "infinitely many simple structures" or failure text
    bool infinitely_many = false;
    bool wh_infinite = false;
    bool pi1_infinite_finite_aut = false;
    bool nilpotent = false;
    std::vector<std::string> reasons;
    std::vector<std::string> caveats;
};

// Checks the three hypotheses (infinite Whitehead group; infinite pi_1 with
// finite automorphism group; nilpotence) for the supported families.
StructuresReport structures_verdict(const SpaceSpec& s);

}  // namespace torsionkit
