// Counts effective squares among the commuting squares of finite sets and
// injections, grouped by whether the two images meet only in the base.
#include <catmt/catmt.hpp>

#include <iostream>

int main() {
    using namespace catmt;
    Cached<SetCat> cat(SetCat(true, 5));
    auto u = square_universe(cat, 4);
    long eff_disjoint = 0, eff_overlap = 0, other = 0;
    u.each([&](const auto& s, const auto& a) {
        auto sq = make_square(s, a);
        bool eff = effective_square(cat, sq);
        bool disjoint = builtin_predicates(cat)[0].decide(sq);
        if (eff && disjoint) ++eff_disjoint;
        else if (eff) ++eff_overlap;
        else ++other;
    });
    std::cout << "spans " << u.spans.size() << ", squares " << u.squares() << "\n"
              << "effective and disjoint: " << eff_disjoint << "\n"
              << "effective but overlapping: " << eff_overlap << "\n"
              << "not effective: " << other << "\n";
}
