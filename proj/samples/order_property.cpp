// Order property in a linear order versus an equivalence relation, and the
// types over a finite chain realised in its cut extension.
#include <catmt/catmt.hpp>

#include <iostream>

int main() {
    using namespace catmt;
    auto lt = parse_formula("lt(x,y)");
    for (int n = 3; n <= 6; ++n) {
        auto w = order_property_witness(lt, linear_order(n), n);
        std::cout << "linear order of " << n << ": " << (w.sequence ? "ordered sequence found" : "none") << "\n";
    }
    auto e = order_property_any(equivalence_structure({2, 2, 2}), 1, 2);
    std::cout << "equivalence 2+2+2, any formula, length 2: " << (e.sequence ? "found" : "none") << "\n";
    for (int n = 1; n <= 5; ++n) std::cout << "cuts over " << n << " points: " << cut_types_demo(n) << " types\n";
}
