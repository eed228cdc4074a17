// Test-only brute-force route to trace matrices: conjugate sums computed by
// direct substitution in the relation algebra, independent of the regular
// representation used by the library.
#pragma once

#include "perfval/purity.hpp"

namespace perfval::testing {

/// Tr(z) = sum over the Galois orbit.  Artin-Schreier conjugation is
/// x -> x + i over F_p; degree-2 Kummer conjugation is x -> -x.  Returns
/// the constant term and writes whether the x-dependence cancelled.
inline LaurentElement trace_by_conjugates(const RelationAlgebra& alg, const ExtensionSpec& spec,
                                          const std::vector<LaurentElement>& z,
                                          const Exponent& cap, bool* cancelled) {
    const RingDescriptor& d = spec.desc;
    auto acc = alg.zero_poly();
    if (spec.kind == ExtensionSpec::Kind::artin_schreier) {
        for (long i = 0; i < d.prime; ++i) acc = alg.add(acc, alg.substitute_shift(z, i));
    } else {
        if (alg.degree() != 2) throw InvalidInput("conjugate oracle covers degree-2 Kummer only");
        auto zbar = z;
        zbar[1] = laurent_neg(zbar[1]);
        acc = alg.add(z, zbar);
    }
    LaurentElement zero(RingElement::zero(d));
    if (cancelled) {
        *cancelled = true;
        for (unsigned j = 1; j < alg.degree(); ++j)
            if (!laurent_equals_below(acc[j], zero, cap)) *cancelled = false;
    }
    return acc[0];
}

inline ElementMatrix trace_matrix_oracle(const ExtensionOrder& order, const Exponent& cap,
                                         bool* ok = nullptr) {
    const ExtensionSpec& spec = order.spec;
    RelationAlgebra alg(spec.kind, order.rank, spec.a);
    ElementMatrix t(spec.desc, order.rank, order.rank);
    if (ok) *ok = true;
    for (unsigned i = 0; i < order.rank; ++i)
        for (unsigned j = 0; j < order.rank; ++j) {
            auto xe = alg.power_of_x(i + j);
            Exponent s = order.basis_shifts[i] + order.basis_shifts[j];
            LaurentElement scale =
                s.is_negative() ? LaurentElement(RingElement::one(spec.desc), -s)
                                : LaurentElement(RingElement::monomial(spec.desc, s, 1));
            for (auto& c : xe) c = c * scale;
            bool cancelled = true;
            LaurentElement tr = trace_by_conjugates(alg, spec, xe, cap, &cancelled);
            if (ok && (!cancelled || !tr.is_integral())) *ok = false;
            t.at(i, j) = tr.is_integral() ? tr.to_ring() : RingElement::zero(spec.desc);
        }
    return t;
}

}  // namespace perfval::testing
