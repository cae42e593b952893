// Subspace bases for small classical groups, one line per orbit.
#include <iostream>

#include <minbase/bounds.hpp>
#include <minbase/classical.hpp>
#include <minbase/construct_subspace.hpp>
#include <minbase/verify.hpp>

using namespace minbase;

int main()
{
  struct row
  {
    family fam;
    std::size_t d;
    std::uint32_t q;
  };
  for (auto [fam, d, q] : {row{family::SL, 4, 3}, row{family::Sp, 6, 2}, row{family::SU, 4, 4},
                           row{family::OmegaPlus, 8, 2}, row{family::OmegaMinus, 6, 3}, row{family::OmegaOdd, 7, 3}}) {
    auto s = make_spec(fam, d, field::of_order(q));
    for (std::size_t k = 1; 2 * k <= d; ++k)
      for (auto const &o : subspace_orbits(s, k)) {
        std::cout << family_name(fam) << "(" << d << "," << q << ") k=" << k << " " << o.label << ": ";
        try {
          auto c = subspace_base(s, o);
          auto cert = verify_subspace_base(s, c.elements);
          std::cout << c.elements.size() << " <= " << c.claimed_bound << " " << c.bound_ref << " "
                    << cert_status_name(cert.status) << "\n";
        } catch (error const &e) {
          std::cout << e.what() << "\n";
        }
      }
  }

  std::cout << "\nSp(d,q) on vectors, b = d:\n";
  for (std::size_t d : {2u, 4u, 6u})
    std::cout << "  d=" << d << " q=3 |G| = " << sp_order(d, 3) << "\n";
}
