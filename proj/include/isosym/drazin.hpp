// Drazin index, core-nilpotent decomposition and Drazin inverse.
//
// T is similar to T1 (+) T2 with T1 invertible and T2 nilpotent of order p;
// the Drazin inverse is then S (T1^{-1} (+) 0) S^{-1} and satisfies
//   [Td, T] = 0,  Td^2 T = Td,  T^{p+1} Td = T^p.
#pragma once

#include "isosym/linalg.hpp"

#include <map>
#include <string>

namespace isosym {

struct DrazinDecomposition {
    CMatrix similarity;   // S: columns = orthonormal basis of range(T^p),
                          // then of null(T^p)
    CMatrix core;         // T1, dim d1 (invertible)
    CMatrix nilpotent;    // T2, dim d - d1
    int index = 1;        // p
    CMatrix drazin;       // Td, full dimension

    std::map<std::string, double> diagnostics;
    // keys: "similarity-residual" ||T - S (T1+T2) S^{-1}||, "offblock",
    //       "core-sigma-min", "nilpotent-power" ||T2^p||,
    //       "nilpotent-power-prev" ||T2^{p-1}||,
    //       "axiom-commute", "axiom-td2t", "axiom-tp1td", "axiom-scale"
};

/// Smallest p >= 1 with rank(T^p) = rank(T^{p+1}); always <= dim
/// (invertible T gives p = 1).
int drazin_index(const CMatrix& t, const Tolerance& tol = {});

/// Bases extracted from the SVD of T^p; throws "ill-conditioned-splitting"
/// when the combined basis has 2-norm condition above 1e8.
DrazinDecomposition core_nilpotent(const CMatrix& t, const Tolerance& tol = {});

CMatrix drazin_inverse(const CMatrix& t, const Tolerance& tol = {});

} // namespace isosym
