#include <cstdlib>
#include <iostream>

#include <minbase/acceptance.hpp>

int main(int argc, char **argv)
{
  minbase::acceptance_options o;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--quick")
      o.max_d = 6;
  minbase::acceptance_suite suite(o);
  auto res = suite.run(std::cout);
  for (auto const &r : res)
    if (!r.pass)
      return EXIT_FAILURE;
  return EXIT_SUCCESS;
}
