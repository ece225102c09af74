#include "reflex/io.hpp"

#include <fstream>
#include <sstream>

namespace reflex {

namespace {

// strips comments; returns false at end of input
bool nextContentLine(std::istream& in, std::string& line, long& lineNo) {
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) return true;
    }
    return false;
}

Int parseInt(const std::string& tok, long lineNo) {
    try {
        return Int(tok);
    } catch (const std::exception&) {
        throw ParseError("invalid integer '" + tok + "'", lineNo);
    }
}

Rat parseRat(const std::string& tok, long lineNo) {
    auto slash = tok.find('/');
    if (slash == std::string::npos) return Rat(parseInt(tok, lineNo));
    Int num = parseInt(tok.substr(0, slash), lineNo);
    Int den = parseInt(tok.substr(slash + 1), lineNo);
    if (den == 0) throw ParseError("zero denominator", lineNo);
    return Rat(num) / Rat(den);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

} // namespace

LatticePolytope readPolytope(std::istream& in) {
    std::string line;
    long lineNo = 0;
    if (!nextContentLine(in, line, lineNo)) throw ParseError("empty polytope file", lineNo + 1);
    auto head = tokens(line);
    if (head.size() != 2) throw ParseError("expected header 'n v'", lineNo);
    long n = parseInt(head[0], lineNo).convert_to<long>();
    long v = parseInt(head[1], lineNo).convert_to<long>();
    if (n < 1 || v < 1) throw ParseError("header values must be positive", lineNo);

    std::vector<IntVec> verts;
    for (long i = 0; i < v; ++i) {
        if (!nextContentLine(in, line, lineNo))
            throw ParseError("expected " + std::to_string(v) + " vertex lines, got " +
                                 std::to_string(i),
                             lineNo + 1);
        auto toks = tokens(line);
        if (static_cast<long>(toks.size()) != n)
            throw ParseError("expected " + std::to_string(n) + " coordinates", lineNo);
        IntVec x(n);
        for (long j = 0; j < n; ++j) x[j] = parseInt(toks[static_cast<size_t>(j)], lineNo);
        verts.push_back(std::move(x));
    }
    return LatticePolytope::fromVertices(verts);
}

LatticePolytope readPolytopeFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open polytope file: " + path);
    return readPolytope(in);
}

void writePolytope(std::ostream& out, const LatticePolytope& p) {
    out << p.dim() << " " << p.vertices().size() << "\n";
    for (const auto& v : p.vertices()) {
        for (Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
        out << "\n";
    }
}

std::string polytopeToString(const LatticePolytope& p) {
    std::ostringstream ss;
    writePolytope(ss, p);
    return ss.str();
}

LaurentPolynomial readLaurent(std::istream& in) {
    std::string line;
    long lineNo = 0;
    if (!nextContentLine(in, line, lineNo)) throw ParseError("empty laurent file", lineNo + 1);
    auto head = tokens(line);
    if (head.size() != 2) throw ParseError("expected header 'n t'", lineNo);
    long n = parseInt(head[0], lineNo).convert_to<long>();
    long t = parseInt(head[1], lineNo).convert_to<long>();
    if (n < 1 || t < 1) throw ParseError("header values must be positive", lineNo);

    LaurentPolynomial f(n);
    for (long i = 0; i < t; ++i) {
        if (!nextContentLine(in, line, lineNo))
            throw ParseError("expected " + std::to_string(t) + " term lines", lineNo + 1);
        auto toks = tokens(line);
        if (static_cast<long>(toks.size()) != n + 1)
            throw ParseError("expected coefficient and " + std::to_string(n) + " exponents",
                             lineNo);
        Rat c = parseRat(toks[0], lineNo);
        IntVec e(n);
        for (long j = 0; j < n; ++j) e[j] = parseInt(toks[static_cast<size_t>(j) + 1], lineNo);
        if (f.coefficient(e) != 0) throw ParseError("duplicate exponent vector", lineNo);
        f.setCoefficient(e, c);
    }
    return f;
}

LaurentPolynomial readLaurentFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open laurent file: " + path);
    return readLaurent(in);
}

void writeLaurent(std::ostream& out, const LaurentPolynomial& f) {
    out << f.dim() << " " << f.termCount() << "\n";
    for (const auto& [e, c] : f.terms()) {
        out << toString(c);
        for (Index i = 0; i < e.size(); ++i) out << " " << e[i];
        out << "\n";
    }
}

} // namespace reflex
