// Walks through the truncated-ellipsoid pipeline for a = (1, 1) and prints
// the pieces that feed the final bound.

#include <iostream>

#include "orbitgauge/orbitgauge.hpp"

using namespace orbitgauge;

int main() {
  const EllipsoidSpec base{{Rational(1), Rational(1)}};
  const DirichletWitness w = dirichlet_tuple(base, BigInt(3));
  std::cout << "window (" << w.lo << ", " << w.hi << ")\n";

  const Rational beta(299, 100);
  certify_beta(base, beta, w);
  const auto spec = make_truncated(base, Rational(1, 100), beta);

  const PeriodInfimum p = trunc_nontrivial_period_infimum(spec);
  std::cout << "P* = " << p.value << " at N=" << p.N << ", k=" << p.k << '\n';

  const TruncLowerReport rep = lower_trunc_vs_all_ellipsoids(spec, w);
  std::cout << "barcode " << to_json(rep.barcode).dump() << '\n';
  std::cout << "delta_f(E, V) >= " << rep.certificate.value << " ~ " << rep.certificate.value.decimal(4) << '\n';
  std::cout << "delta_f(V, E) <= " << upper_trunc_vs_ellipsoid(spec).value << '\n';

  const V34Report v = v34_report(1, Rational(1, 1000));
  std::cout << "v34: lower " << v.lower << ", d_c upper " << v.upper_dc.value << ", strict " << std::boolalpha << v.strict << '\n';
}
