#include "ccbil/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccb {

namespace {

void write_entry(std::ostream& os, const SmallField& F, uint32_t code) {
    for (uint32_t i = 0; i < F.r; ++i) {
        os << (code % F.p);
        if (i + 1 < F.r) os << ' ';
        code /= F.p;
    }
}

struct LineReader {
    std::istream& in;
    int lineno = 0;
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] == '#') continue;
            // trim trailing whitespace/CR
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
            if (line.empty()) continue;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
    }
};

std::vector<uint32_t> parse_entries(LineReader& rd, const std::string& line, const SmallField& F, int count) {
    std::istringstream is(line);
    std::vector<uint32_t> out;
    out.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        uint32_t code = 0, mulp = 1;
        for (uint32_t i = 0; i < F.r; ++i) {
            long digit;
            if (!(is >> digit)) rd.fail("expected " + std::to_string(count * F.r) + " digits");
            if (digit < 0 || digit >= static_cast<long>(F.p)) rd.fail("digit out of range 0..p-1");
            code += static_cast<uint32_t>(digit) * mulp;
            mulp *= F.p;
        }
        out.push_back(code);
    }
    long extra;
    if (is >> extra) rd.fail("trailing digits on line");
    return out;
}

}  // namespace

std::string write_bilalg(const BilinearAlgorithm& alg, const std::string& comment) {
    const SmallField& F = alg.field();
    int d = alg.dim(), n = alg.length();
    std::ostringstream os;
    if (!comment.empty()) {
        std::istringstream cs(comment);
        std::string cl;
        while (std::getline(cs, cl)) os << "# " << cl << "\n";
    }
    os << "BILALG v1 q=" << F.q << " dim=" << d << " n=" << n << " sym=" << (alg.symmetric ? 1 : 0) << "\n";
    os << "C\n";
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            auto col = alg.A->product_column(a, b);
            for (int k = 0; k < d; ++k) {
                write_entry(os, F, col[static_cast<size_t>(k)]);
                if (k + 1 < d) os << ' ';
            }
            os << "\n";
        }
    auto block = [&](const char* name, const Mat& M) {
        os << name << "\n";
        for (int i = 0; i < M.nr; ++i) {
            for (int j = 0; j < M.nc; ++j) {
                write_entry(os, F, M.at(i, j));
                if (j + 1 < M.nc) os << ' ';
            }
            os << "\n";
        }
    };
    block("PHI", alg.phi);
    block("PSI", alg.psi);
    block("W", alg.w);
    return os.str();
}

BilinearAlgorithm read_bilalg(Workspace& ws, std::istream& in) {
    LineReader rd{in};
    std::string line;
    if (!rd.next(line)) rd.fail("empty input");
    uint32_t q = 0;
    int d = -1, n = -1, sym = -1;
    {
        std::istringstream is(line);
        std::string magic, ver, kv;
        is >> magic >> ver;
        if (magic != "BILALG" || ver != "v1") rd.fail("expected BILALG v1 header");
        while (is >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) rd.fail("malformed header field: " + kv);
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            long v;
            try {
                v = std::stol(val);
            } catch (...) {
                rd.fail("malformed header value: " + kv);
            }
            if (key == "q") q = static_cast<uint32_t>(v);
            else if (key == "dim") d = static_cast<int>(v);
            else if (key == "n") n = static_cast<int>(v);
            else if (key == "sym") sym = static_cast<int>(v);
            else rd.fail("unknown header field: " + key);
        }
    }
    if (q < 2 || d < 0 || n < 0 || sym < 0 || sym > 1) rd.fail("incomplete or invalid header");
    const SmallField& F = ws.field(q);

    if (!rd.next(line) || line != "C") rd.fail("expected C block");
    std::vector<uint32_t> dense(static_cast<size_t>(d) * d * d, 0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (!rd.next(line)) rd.fail("truncated C block");
            auto row = parse_entries(rd, line, F, d);
            for (int k = 0; k < d; ++k) dense[(static_cast<size_t>(a) * d + b) * d + k] = row[static_cast<size_t>(k)];
        }
    BilinearAlgorithm alg;
    alg.A = make_algebra_from_dense(F, d, dense);
    auto block = [&](const char* name, int rows, int cols) {
        if (!rd.next(line) || line != name) rd.fail(std::string("expected ") + name + " block");
        Mat M(rows, cols);
        for (int i = 0; i < rows; ++i) {
            if (!rd.next(line)) rd.fail(std::string("truncated ") + name + " block");
            auto row = parse_entries(rd, line, F, cols);
            for (int j = 0; j < cols; ++j) M.at(i, j) = row[static_cast<size_t>(j)];
        }
        return M;
    };
    alg.phi = block("PHI", n, d);
    alg.psi = block("PSI", n, d);
    alg.w = block("W", d, n);
    alg.symmetric = sym == 1;
    if (alg.symmetric && !(alg.phi == alg.psi)) rd.fail("sym=1 but PHI and PSI differ");
    if (rd.next(line)) rd.fail("unexpected trailing content: " + line);
    return alg;
}

BilinearAlgorithm read_bilalg_file(Workspace& ws, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_bilalg(ws, in);
}

AlgebraPtr read_consts(Workspace& ws, std::istream& in) {
    LineReader rd{in};
    std::string line;
    if (!rd.next(line)) rd.fail("empty input");
    uint32_t q = 0;
    int d = -1;
    {
        std::istringstream is(line);
        std::string magic, ver, kv;
        is >> magic >> ver;
        if (magic != "CONSTS" || ver != "v1") rd.fail("expected CONSTS v1 header");
        while (is >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) rd.fail("malformed header field: " + kv);
            long v = std::stol(kv.substr(eq + 1));
            if (kv.substr(0, eq) == "q") q = static_cast<uint32_t>(v);
            else if (kv.substr(0, eq) == "dim") d = static_cast<int>(v);
            else rd.fail("unknown header field");
        }
    }
    if (q < 2 || d < 0) rd.fail("incomplete header");
    const SmallField& F = ws.field(q);
    if (!rd.next(line) || line != "C") rd.fail("expected C block");
    std::vector<uint32_t> dense(static_cast<size_t>(d) * d * d, 0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (!rd.next(line)) rd.fail("truncated C block");
            auto row = parse_entries(rd, line, F, d);
            for (int k = 0; k < d; ++k) dense[(static_cast<size_t>(a) * d + b) * d + k] = row[static_cast<size_t>(k)];
        }
    return make_algebra_from_dense(F, d, dense);
}

namespace {

std::string poly_literal(const Poly& p) {
    std::string s = "[";
    for (int i = 0; i <= p.deg(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.coeff(i));
    }
    return s + "]";
}

Poly parse_poly_literal(const SmallField& F, const std::string& text, size_t& pos) {
    if (pos >= text.size() || text[pos] != '[') throw std::invalid_argument("expected [ in polynomial literal");
    ++pos;
    Poly p;
    while (pos < text.size() && text[pos] != ']') {
        size_t next = pos;
        long v = std::stol(text.substr(pos), &next);
        if (v < 0 || v >= static_cast<long>(F.q)) throw std::invalid_argument("coefficient out of range");
        p.c.push_back(static_cast<uint32_t>(v));
        pos += next;
        if (pos < text.size() && text[pos] == ',') ++pos;
    }
    if (pos >= text.size()) throw std::invalid_argument("unterminated polynomial literal");
    ++pos;  // ']'
    p.normalize();
    return p;
}

}  // namespace

std::string p1_divisor_literal(const P1Divisor& D) {
    std::string s;
    for (auto& [P, m] : D.mult) {
        if (!s.empty()) s += ",";
        s += P.inf ? "inf" : poly_literal(P.minpoly);
        s += "^" + std::to_string(m);
    }
    return s.empty() ? "0" : s;
}

P1Divisor parse_p1_divisor(const SmallField& F, const std::string& text) {
    P1Divisor D;
    if (text == "0" || text.empty()) return D;
    size_t pos = 0;
    while (pos < text.size()) {
        P1Point P;
        if (text.compare(pos, 3, "inf") == 0) {
            P = P1Point::infinity();
            pos += 3;
        } else {
            Poly mp = parse_poly_literal(F, text, pos);
            if (mp.deg() < 1 || mp.lead() != 1 || !p_is_irreducible(F, mp))
                throw std::invalid_argument("divisor polynomial must be monic irreducible");
            P = P1Point::finite(mp);
        }
        int mult = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            size_t next = 0;
            mult = static_cast<int>(std::stol(text.substr(pos), &next));
            pos += next;
        }
        D.add(P, mult);
        if (pos < text.size()) {
            if (text[pos] != ',') throw std::invalid_argument("expected , between divisor terms");
            ++pos;
        }
    }
    return D;
}

std::string curve_literal(const EllipticCurve& C) {
    std::string s = "q=" + std::to_string(C.F->q) + " a=[";
    for (int i = 0; i < 5; ++i) {
        if (i) s += ",";
        s += std::to_string(C.a[static_cast<size_t>(i)]);
    }
    return s + "]";
}

std::string ec_point_literal(const ECClosedPoint& P) {
    if (P.inf) return "inf";
    std::string s = "deg=" + std::to_string(P.deg) + " x=[";
    for (size_t i = 0; i < P.x.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(P.x[i]);
    }
    s += "] y=[";
    for (size_t i = 0; i < P.y.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(P.y[i]);
    }
    return s + "]";
}

std::string ec_divisor_literal(const ECDivisor& D) {
    std::string s;
    for (auto& [P, m] : D.mult) {
        if (!s.empty()) s += "; ";
        s += ec_point_literal(P) + " ^" + std::to_string(m);
    }
    return s.empty() ? "0" : s;
}

std::string serialize_plan(const P1Plan& plan) {
    std::ostringstream os;
    os << "curve: P1 over q=" << plan.q << "\n";
    os << "target: m=" << plan.m << " l=" << plan.l << "\n";
    os << "Q: " << poly_literal(plan.Q.minpoly) << "\n";
    P1Divisor G = plan.G;
    os << "G: " << p1_divisor_literal(G) << "\n";
    os << "D1: " << p1_divisor_literal(plan.D1) << "\n";
    os << "D2: " << p1_divisor_literal(plan.D2) << "\n";
    os << "cells:";
    for (auto& [P, u] : plan.cells) os << " (" << P.deg() << "," << u << ")";
    os << "\n";
    return os.str();
}

std::string serialize_plan(const ECPlan& plan) {
    std::ostringstream os;
    os << "curve: " << curve_literal(*plan.C) << "\n";
    os << "target: m=" << plan.m << " l=" << plan.l << "\n";
    os << "Q: " << ec_point_literal(plan.Q) << "\n";
    os << "G: " << ec_divisor_literal(plan.G) << "\n";
    os << "D1: " << ec_divisor_literal(plan.D1) << "\n";
    os << "D2: " << ec_divisor_literal(plan.D2) << "\n";
    os << "cells:";
    for (auto& [P, u] : plan.cells) os << " (" << P.deg << "," << u << ")";
    os << "\n";
    return os.str();
}

}  // namespace ccb
