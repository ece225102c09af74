#pragma once

#include "reflex/laurent.hpp"
#include "reflex/polytope.hpp"
#include "reflex/types.hpp"

#include <iosfwd>
#include <string>

namespace reflex {

/// Malformed input file; carries the 1-based line number.
class ParseError : public PreconditionError {
public:
    ParseError(const std::string& what, long line)
        : PreconditionError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// Polytope text format: first non-comment line `n v`, then v lines of n
/// integers (vertices). `#` starts a comment. Writing emits the polytope's
/// canonical vertex order, so write(read(write(p))) == write(p) bit-exactly.
LatticePolytope readPolytope(std::istream& in);
LatticePolytope readPolytopeFile(const std::string& path);
void writePolytope(std::ostream& out, const LatticePolytope& p);
std::string polytopeToString(const LatticePolytope& p);

/// Laurent polynomial format: first non-comment line `n t`, then t lines
/// `num[/den] e_1 ... e_n`.
LaurentPolynomial readLaurent(std::istream& in);
LaurentPolynomial readLaurentFile(const std::string& path);
void writeLaurent(std::ostream& out, const LaurentPolynomial& f);

} // namespace reflex
