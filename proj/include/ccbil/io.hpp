#pragma once

#include <iosfwd>
#include <string>

#include "ccbil/synthesis.hpp"

namespace ccb {

// line-oriented interchange format:
//   BILALG v1 q=<q> dim=<d> n=<n> sym=<0|1>
//   C                                   (d*d rows: coordinates of e_a e_b)
//   PHI / PSI                           (n rows each)
//   W                                   (d rows of n entries)
// every F_q entry is written as r integers in [0,p), ascending digits;
// lines starting with '#' are comments
std::string write_bilalg(const BilinearAlgorithm& alg, const std::string& comment = "");
BilinearAlgorithm read_bilalg(Workspace& ws, std::istream& in);
BilinearAlgorithm read_bilalg_file(Workspace& ws, const std::string& path);

// structure-constants-only file for the rank subcommand:
//   CONSTS v1 q=<q> dim=<d>  followed by the C block
AlgebraPtr read_consts(Workspace& ws, std::istream& in);

// P^1 divisor literal: comma-separated `<poly|inf>^<mult>` terms with
// polynomials as coefficient lists, e.g. inf^3,[1,1,1]^2
std::string p1_divisor_literal(const P1Divisor& D);
P1Divisor parse_p1_divisor(const SmallField& F, const std::string& text);

// curve literal: q=<q> a=[a1,a2,a3,a4,a6] with base-p digit codes
std::string curve_literal(const EllipticCurve& C);
// elliptic point literal: inf | deg=<d> x=[..] y=[..]; divisor terms joined
// with ';'
std::string ec_point_literal(const ECClosedPoint& P);
std::string ec_divisor_literal(const ECDivisor& D);

// reproducible text form of a plan (curve, Q, G, D1, D2, inner cells)
std::string serialize_plan(const P1Plan& plan);
std::string serialize_plan(const ECPlan& plan);

}  // namespace ccb
