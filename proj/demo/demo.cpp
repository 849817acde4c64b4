// Small tour: analyze a model, build a generating function for a base,
// and reduce one model to another.
#include <iostream>

#include "indmodel/indmodel.hpp"

using namespace indmodel;

int main() {
    const Bound b;

    InductionModel strong{SetSpec::cofinite({2}),
                          Piecewise(1,
                                    {{0, 1, Multilinear::constant(1, 10)}, {0, 5, Multilinear::constant(1, 10)}},
                                    Multilinear::affine_unary(-1, 1))};
    ClosureTrace tr = closure_trace(strong, b);
    std::cout << to_string(strong) << ": n = " << to_string(tr.stabilized_at)
              << ", covered = " << (nim_verdict(tr).covered ? "yes" : "no") << "\n";

    ConstructionResult c = construct_s_multiplicative(SetSpec::finite({3, 7}), 2);
    std::cout << "multiplicative S for {3, 7}: " << to_string(c.model.gen) << ", covered = "
              << (is_nim_bounded(c.model, b).covered ? "yes" : "no") << "\n";

    InductionModel first{SetSpec::finite({1}), Multilinear::affine_unary(1, 1)};
    ReducibilityVerdict v = decide_reducible(strong, first, b);
    std::cout << "reduce to first principle: " << to_string(v.result) << " (" << v.explanation << ")\n";
    ReductionRelation r = build_reduction(strong, first, b);
    std::cout << "R(2) = " << format_set(r.at(2)) << ", verified = "
              << (verify_reduction(strong, first, r, b).verified() ? "yes" : "no") << "\n";
}
