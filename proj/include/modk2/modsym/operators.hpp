#pragma once

// Operators on modular symbols {alpha, beta} given as integer combinations of
// 2x2 matrices acting on both endpoints; diamond, Atkin-Lehner, Hecke and
// degeneracy operators, realized as integer matrices on presentation coordinates.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "modk2/modsym/homology.hpp"

namespace modk2::modsym {

struct MatrixSum {
    std::vector<std::pair<i64, Mat2>> terms;
    std::string name;
};

MatrixSum diamond_op(i64 M, i64 t);
MatrixSum atkin_lehner_op(i64 M);
/// U_l (l | M): sum over j < l of (1 j; 0 l).
MatrixSum hecke_u_op(i64 M, i64 l);
/// T_l (l not dividing M): U_l-part plus <l>(l 0; 0 1).
MatrixSum hecke_t_op(i64 M, i64 l);

/// Image of {alpha, beta} under a matrix sum, in the coordinates of `target`.
HomVec apply_to_symbol(const HomologyPresentation& target, const MatrixSum& op, const Frac& alpha, const Frac& beta);

/// Matrix of an operator from `source` coordinates to `target` coordinates (row vectors: h -> h * A).
IntMatrix operator_matrix(const HomologyPresentation& source, const HomologyPresentation& target, const MatrixSum& op);

/// Cached matrix of an operator on one level, keyed by name.
std::shared_ptr<const IntMatrix> level_operator(i64 M, const MatrixSum& op);

enum class Degeneracy { pi1, pi2 };

/// pi_1 : {a, b} -> {a, b} and pi_2 : {a, b} -> {pa, pb} from level Mp to level M.
IntMatrix degeneracy_matrix(i64 M, i64 p, Degeneracy which);

/// (pi_1 - <p> pi_2) from level Mp to level M.
IntMatrix pi1_minus_diamond_pi2(i64 M, i64 p);

/// Cusp map induced by a degeneracy: index at level Mp -> index at level M.
std::vector<std::size_t> degeneracy_cusp_map(i64 M, i64 p, Degeneracy which);

}  // namespace modk2::modsym
