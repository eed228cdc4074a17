#pragma once

#include <cstdint>
#include <vector>

#include "perfval/presentation.hpp"
#include "perfval/report.hpp"

namespace perfval {

/// Value of the normalized length lambda_infty: an exact nonnegative
/// rational (the embedding of the completed value group is realized in Q),
/// or the explicit value infinity for modules outside the torsion category.
class LengthValue {
public:
    static LengthValue finite(mpq_class q) { return LengthValue(false, std::move(q)); }
    static LengthValue finite(const Exponent& e) { return LengthValue(false, e.value()); }
    static LengthValue infinite() { return LengthValue(true, 0); }

    bool is_infinite() const { return infinite_; }
    const mpq_class& value() const {
        if (infinite_) throw InvalidInput("length is infinite");
        return q_;
    }
    std::string str() const { return infinite_ ? "inf" : rat_string(q_); }

    friend bool operator==(const LengthValue& a, const LengthValue& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || cmp(a.q_, b.q_) == 0;
    }

private:
    LengthValue(bool inf, mpq_class q) : infinite_(inf), q_(std::move(q)) {}
    bool infinite_;
    mpq_class q_;
};

/// lambda_infty of a finitely presented torsion module: the valuation of
/// the 0-th Fitting ideal (equivalently the elementary divisor sum).
/// Presentations failing the torsion certificate get the explicit value
/// infinity; precision failures propagate as errors.
LengthValue lambda_fp(const PresentationMatrix& a);

/// lambda_infty of a cut module: the sup over finitely generated
/// submodules collapses to the threshold sum, independent of endpoints.
LengthValue lambda_cut(const CutModule& m);

/// Presentation of M^[F] (restriction of scalars along Frobenius) in
/// char_p mode: entrywise p-th root, valid because x -> x^(1/p) is a ring
/// isomorphism of the perfect model carrying (c) to (c^(1/p)).  Mixed-mode
/// restrictions are handled through the residue identification in the
/// purity module; calling this on a mixed presentation throws.
PresentationMatrix frobenius_restrict(const PresentationMatrix& a);

/// Checks lambda(M^[F]) = lambda(M)/p for the given presentation and for
/// `trials` seeded random presentations of the same shape.
std::vector<CheckReport> pullback_check(const PresentationMatrix& a, unsigned trials,
                                        std::uint64_t seed);

/// lambda(mid) = lambda(sub) + lambda(quot), exact.
CheckReport additivity_check(const ExactTriple& t);

/// lambda(ab * mid) <= lambda(a * sub) + lambda(b * quot), exact.
CheckReport subadditivity_check(const ExactTriple& t, const RingElement& a, const RingElement& b);

/// If lambda(M) = 0: M is almost zero (every threshold 0); when M is in
/// addition finitely presented (all cuts closed), M = 0.
std::vector<CheckReport> zero_length_check(const CutModule& m);
std::vector<CheckReport> zero_length_check(const PresentationMatrix& a);

/// lambda(bM) finite for any b in the maximal ideal, on the representable
/// class.
CheckReport finiteness_check(const CutModule& m, const RingElement& b);

}  // namespace perfval
