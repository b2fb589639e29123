#pragma once

// Cocycle-to-relative-homology check: build Z[G x Gamma_0]/I from a
// Reidemeister-Schreier presentation of Gamma_0(M)/+-1 and compare it with
// H_1(X_1(M), C_0, Z), where C_0 is the diamond orbit of the cusp 0.

#include <string>

#include "modk2/arith.hpp"

namespace modk2::modsym {

struct Prop31Report {
    i64 level = 0;
    int group_order = 0;          // #((Z/M)^x / +-1)
    int schreier_generators = 0;  // non-tree generators of Gamma_0(M)/+-1
    int module_rank = 0;          // free rank of Z[G x Gamma_0]/I
    bool module_torsion_free = false;
    int absolute_rank = 0;        // rank H_1(X_1(M), Z)
    int c0_rank = 0;              // rank H_1(X_1(M), C_0, Z)
    bool relations_vanish = false;  // I maps to zero in homology
    bool surjective = false;
    bool rank_identity() const { return module_rank == absolute_rank + group_order - 1; }
    bool passed() const { return rank_identity() && module_torsion_free && relations_vanish && surjective && module_rank == c0_rank; }
    std::string summary() const;
};

Prop31Report prop31_check(i64 M);

}  // namespace modk2::modsym
