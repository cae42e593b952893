// Bases for S_m on k-subsets, checked against the formulas and brute force.
#include <iomanip>
#include <iostream>

#include <minbase/bounds.hpp>
#include <minbase/construct_sym.hpp>
#include <minbase/verify.hpp>

using namespace minbase;

int main()
{
  std::cout << " m  k  size  bound  ref           status\n";
  for (std::size_t m : {8u, 9u, 12u, 20u, 40u})
    for (std::size_t k : {2u, 3u, 4u}) {
      if (2 * k > m)
        continue;
      auto c = subset_base(m, k);
      auto cert = verify_subset_base(m, c.elements);
      std::cout << std::setw(2) << m << std::setw(3) << k << std::setw(6) << c.elements.size() << std::setw(7)
                << c.claimed_bound << "  " << std::left << std::setw(14) << c.bound_ref << std::right
                << cert_status_name(cert.status) << "\n";
    }

  std::cout << "\nS_9 on 3-subsets:";
  for (auto s : subset_base(9, 3).elements) {
    std::cout << " {";
    for (std::size_t i = 0, first = 1; i < 9; ++i)
      if (s >> i & 1) {
        std::cout << (first ? "" : ",") << i + 1;
        first = 0;
      }
    std::cout << "}";
  }
  std::cout << "\n";

  auto g = induce_on_subsets(symmetric_group(7), 2);
  std::cout << "brute force b(S_7 on 2-subsets) = " << min_base_bruteforce(g, factorial(7)).b << "\n";
}
