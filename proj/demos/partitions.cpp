// S_ab acting on partitions into a blocks of size b.
#include <iostream>

#include <minbase/construct_sym.hpp>
#include <minbase/verify.hpp>

using namespace minbase;

int main()
{
  for (std::size_t a : {2u, 3u, 4u})
    for (std::size_t b : {2u, 3u, 4u}) {
      if (a * b > 12)
        continue;
      auto c = partition_base(a, b);
      auto st = partition_stabilizer_order(a, b, c.elements);
      std::cout << "a=" << a << " b=" << b << "  size " << c.elements.size() << " (" << c.bound_ref << " "
                << c.claimed_bound << ")  stabilizer " << st << "\n";
    }
  // the (3,2) case needs four matchings
  auto c = partition_base(3, 2);
  for (auto p : c.elements) {
    for (auto const &blk : partition_code::blocks(p, 3, 6)) {
      std::cout << " {";
      for (std::size_t i = 0; i < blk.size(); ++i)
        std::cout << (i ? "," : "") << blk[i] + 1;
      std::cout << "}";
    }
    std::cout << "\n";
  }
}
