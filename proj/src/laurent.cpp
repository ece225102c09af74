#include "reflex/laurent.hpp"

namespace reflex {

void LaurentPolynomial::setCoefficient(const IntVec& exponent, const Rat& c) {
    if (exponent.size() != dim_)
        throw PreconditionError("laurent: exponent dimension mismatch");
    if (c == 0)
        terms_.erase(exponent);
    else
        terms_[exponent] = c;
}

Rat LaurentPolynomial::coefficient(const IntVec& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rat(0) : it->second;
}

LatticePolytope LaurentPolynomial::newtonPolytope() const {
    if (terms_.empty()) throw PreconditionError("laurent: zero polynomial has no Newton polytope");
    std::vector<IntVec> pts;
    pts.reserve(terms_.size());
    for (const auto& [e, c] : terms_) pts.push_back(e);
    return LatticePolytope::fromVertices(pts);
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    if (o.dim_ != dim_) throw PreconditionError("laurent: dimension mismatch");
    LaurentPolynomial r(dim_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            IntVec e = e1 + e2;
            Rat c = r.coefficient(e) + c1 * c2;
            r.setCoefficient(e, c);
        }
    return r;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentPolynomial LaurentPolynomial::translated(const IntVec& t) const {
    LaurentPolynomial r(dim_);
    for (const auto& [e, c] : terms_) r.setCoefficient(e + t, c);
    return r;
}

} // namespace reflex
