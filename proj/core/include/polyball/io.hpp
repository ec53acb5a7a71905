#pragma once

#include <string>

#include "polyball/fock.hpp"
#include "polyball/naimark.hpp"
#include "polyball/pluriharm.hpp"
#include "polyball/point.hpp"
#include "polyball/toeplitz.hpp"
#include "polyball/types.hpp"

// JSON text formats. Matrices are flat row-major arrays of interleaved
// real and imaginary parts; multiwords are arrays of per-factor letter
// arrays, e.g. [[1,2],[]]. Malformed input throws ConfigError.
namespace polyball::io {

std::string matrix_to_json(const Mat& m);
Mat matrix_from_json(const std::string& text, Eigen::Index rows, Eigen::Index cols);

std::string multiword_to_json(const MultiWord& w);
MultiWord multiword_from_json(const std::string& text, const std::vector<int>& n);

// {n, h_dim, X: [[matrix per generator] per factor]}
std::string to_json(const PolyballPoint& x);
PolyballPoint point_from_json(const std::string& text);

// {side, n, e_dim, max_len, caps?, generator: [{alpha, beta, matrix}]}
std::string to_json(const ToeplitzKernel& k);
ToeplitzKernel kernel_from_json(const std::string& text);

// {n, e_dim, coeffs: [{alpha, beta, matrix}]}
std::string to_json(const MultiToeplitzSymbol& s);
MultiToeplitzSymbol symbol_from_json(const std::string& text);

// Finite: {n, e_dim, unit, herglotz_class, coeffs: [{alpha, beta, matrix}]}.
// Families: {family: "point_mass", zeta: [[re, im, ...] per factor]} or
// {family: "vacuum", n, e_dim}.
std::string to_json(const CbMapData& mu);
CbMapData cbmap_from_json(const std::string& text);

// {n, degrees, coeff_dim, entries: [[row, col, re, im]]}, sorted by (row, col).
std::string to_json(const FockOperator& op);
FockOperator operator_from_json(const std::string& text);

// {side, n, e_dim, space_dim, max_len, window_len, embedding, V: [[...]]}
std::string to_json(const NaimarkDilation& d);

std::string to_json(const DilationReport& r);

}  // namespace polyball::io
