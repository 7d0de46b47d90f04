#include <iostream>

#include "kleebox/kleebox.hpp"

using namespace kleebox;

int main() {
  BoxSet squares(2, {AxisBox::of({{0, 2}, {0, 2}}), AxisBox::of({{1, 3}, {1, 3}})});
  std::cout << "union area: " << volume(squares) << '\n';

  // Rewrite a general instance as a signed sum over 2-grounded instances in one more dimension.
  const VolumePlan plan = reduce_kmp_to_grounded(squares, 1);
  std::cout << "plan terms: " << plan.terms.size() << ", class " << plan.claimed_class.to_string() << '\n';
  std::cout << "plan value: " << evaluate_plan(plan, [](const BoxSet& m) { return volume_sweep(m); }) << '\n';

  const VerifyReport r = verify_reduction({Reduction::KmpToGrounded, 1}, squares);
  std::cout << io::json(report_to_json(r)).dump(2) << '\n';
}
