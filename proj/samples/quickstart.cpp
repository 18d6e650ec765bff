// Grow a small approximation over w + zeta, check it, play one game.
#include <iostream>

#include "scottrank/scottrank.hpp"

using namespace scottrank;

int main() {
  auto L = LinOrder::make(OrderSpec::limit_plus_zeta(OrdCNF::omega()));
  auto R = RnSystem::make(L, RnMode::kTrivial);
  std::cout << "order " << L->spec().to_string() << ", wf " << L->wf().to_string() << ", wfc "
            << L->wfc().to_string() << "\n";

  Approx a = grow(new_approx(L, R, 1), 4);
  std::cout << a.size() << " nodes after " << a.stage << " stages\n";
  std::cout << check_approx(a).summary();

  // a sibling of x agreeing only up to (0, 1), then compared at rho(x)
  const OrderElem one = L->ord(OrdCNF::finite(1));
  if (auto x = find_child(a.base, kRoot, one, 0)) {
    auto r = realize_sibling(a, *x, EVal::pair(L->ord(OrdCNF()), 1));
    std::cout << "sim at 1: " << sim_alpha(r.a, *x, r.node, one) << "\n";
    auto g = challenger_distinguish(r.a, *x, r.node, one);
    std::cout << "challenger won in " << g.t.rounds.size() << " rounds\n";
  }

  auto d = predicted_spectrum({L->spec(), OrderSpec::finite(3)}, SpectrumMode::kWfc);
  std::cout << "spectrum " << d.to_string() << "\n";
}
