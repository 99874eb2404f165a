// Weight-s additive sums over F_{2^8} next to the trivial and large-q bounds.

#include <cmath>
#include <cstdio>

#include "sparsechar/sparsechar.hpp"

using namespace sparsechar;

int main() {
  const auto f = parse_field("p=2,r=8");
  SumInputs in;
  in.psi = AddCharSpec{f->one()};
  in.f2 = parse_rational(*f, "x^5 + x");

  std::printf("s   points   |S|        trivial\n");
  for (unsigned s = 0; s <= f->r(); ++s) {
    const SumReport rep = mixed_sum(*f, in, SumDomain::sparse(s), 1);
    std::printf("%-3u %-8llu %-10.4f %.1f\n", s, static_cast<unsigned long long>(rep.point_count), rep.abs_value,
                std::exp2(rep.trivial_log2));
  }

  const auto w = weil_check(*f, in, 1);
  std::printf("full field: |S| = %.4f, bound = %.4f\n", w.abs_value, w.bound);
  return 0;
}
