#pragma once

#include <string>

#include "tfib/chern.hpp"
#include "tfib/fibration.hpp"
#include "tfib/lattice.hpp"
#include "tfib/monodromy.hpp"
#include "tfib/toric.hpp"

// JSON persistence. Integers are JSON numbers when they fit in 64 bits, decimal strings otherwise.
// Parsers throw Error(MalformedInput) naming the offending location.
namespace tfib::io {

std::string to_json(const IntMatrix& m);
IntMatrix parse_matrix(const std::string& text);

// {"dimension", "generators": [matrix...], "basis_label"}; a bare matrix or matrix list is also accepted.
std::string to_json(const MonodromyRep& rep);
MonodromyRep parse_rep(const std::string& text);

// {"base", "vertices": [{"id", "loops": [[edge, exp]...]}], "edges": [{"id", "ends", "monodromy", "transport"?}]}
// Leg endpoints are the string "LEG"; transport is omitted when it is the identity.
std::string to_json(const FibrationGraph& g);
FibrationGraph parse_fibration(const std::string& text);

// {"lattice_basis", "edges": [{"id", "orient": [from, to], "coeff": [a, b]}], "vertices": [{"id", "order"}]}
std::string to_json(const ChernChain& c);
ChernChain parse_chain(const std::string& text);

// {"m0", "points": [[x, y, z]...], "triangles": [[i, j, k]...]}
std::string to_json(const Triangulation& t);
Triangulation parse_triangulation(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tfib::io
