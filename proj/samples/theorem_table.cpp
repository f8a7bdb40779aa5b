// Prints the cokernel of Tr_{a,b} next to its closed form for small (a, b),
// then the homology of one Koszul complex and a theta coefficient.

#include <iostream>

#include "fihl/fihl.hpp"

int main() {
  using namespace fihl;
  for (int b = 1; b <= 4; ++b)
    for (int a = 1; a <= b; ++a) {
      const DecompositionTable computed = h0_computed(a, b);
      const DecompositionTable predicted = h0_predicted(a, b);
      std::cout << "H0 at (" << a << ", " << b << "): " << computed << (computed == predicted ? "" : "  MISMATCH")
                << "\n";
    }

  const auto homology = homology_decomposition(4, 4);
  for (std::size_t n = 0; n < homology.size(); ++n) std::cout << "H_" << n << "(4, 4) = " << homology[n] << "\n";

  const ThetaContext ctx{Partition::parse("3,2"), Partition::parse("3"), Partition::parse("2")};
  std::cout << "theta((3,2), (3), (2)) = " << theta_exact(ctx) << ", oracle " << oracle_numeric(ctx) << "\n";
}
