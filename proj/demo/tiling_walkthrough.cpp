// Finds a splitting, turns it into a lattice, checks the tiling two ways and
// screens a few m values.

#include <iostream>

#include "ltile/ltile.hpp"

using namespace ltile;

int main() {
  const ErrorBall ball(3, 2, 1, 0);
  std::cout << "ball " << ball.to_string() << " has " << ball_size(ball) << " points\n";

  const auto r = search(AbelianGroup::cyclic(7), ball.magnitudes(), ball.t, ball.n);
  if (r.status != SearchStatus::found) {
    std::cout << "no splitting: " << to_string(r.status) << '\n';
    return 1;
  }
  const auto& S = r.certificates.front();
  std::cout << "certificate:\n" << emit_certificate(S);

  const auto L = lattice_from_splitting(S);
  std::cout << "lattice:\n" << emit_lattice(L);

  const auto q = quotient_splitting(L, ball);
  const auto box = verify_tiling_box(ball, L, 6);
  std::cout << "quotient " << q.map.target.to_string() << " splitting: " << to_string(q.status) << '\n'
            << "box check: " << to_string(box.status) << " (" << box.interior_points << " points)\n";

  for (std::uint64_t m : {4, 8, 64}) {
    const auto rep = screen::screen_m(m);
    std::cout << "m=" << m << " largest surviving n: " << (rep.max_survivor ? std::to_string(*rep.max_survivor) : "none")
              << (rep.ok ? " (within bound)" : " (bound violated)") << '\n';
  }
  return 0;
}
