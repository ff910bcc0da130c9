#ifndef POVMKIT_GENERATORS_HPP
#define POVMKIT_GENERATORS_HPP

#include <cstdint>

#include "povmkit/instruments_types.hpp"
#include "povmkit/markov.hpp"
#include "povmkit/povm.hpp"

namespace povmkit {

/* Seeded generators: same seed, same bits, every run. All of them draw from
   the SplitMix64 stream in povmkit/random.hpp; none touch global state. */

// G_i = M_i M_i^dag with complex-Gaussian M_i, then A(i) = S^-1/2 G_i S^-1/2
// for S = sum G_i. Labels "0".."n-1". Retries a degenerate S up to 10 times.
DiscretePovm random_povm(int dim, int n_outcomes, uint64_t seed, const Tolerances& tol = {});

// M M^dag / tr, complex-Gaussian M.
DensityMatrix random_density(int dim, uint64_t seed, const Tolerances& tol = {});

// Columns drawn uniformly from the probability simplex.
MarkovMatrix random_markov(int n_rows, int n_cols, uint64_t seed);

// Kraus families K_{x,k} = M_{x,k} T^-1/2 with T = sum M^dag M, so the
// instrument normalization holds by construction.
KrausInstrument random_instrument(int dim, int n_outcomes, int kraus_per_outcome,
                                  uint64_t seed, const Tolerances& tol = {});

/* Manufactures a redundant POVM equivalent to A: effects kappa(x|y) A(y)
   for every positive kernel entry, labels "(x,y)". The split is fuzzy
   equivalent to A by construction. */
DiscretePovm split_povm(const DiscretePovm& a, const MarkovMatrix& kappa,
                        const Tolerances& tol = {});

// Convenience form drawing the kernel itself: split through a random
// n_rows-row Markov matrix.
DiscretePovm split_povm(const DiscretePovm& a, int n_rows, uint64_t seed,
                        const Tolerances& tol = {});

}  // namespace povmkit

#endif
