#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cubeforge/coloring.hpp"
#include "cubeforge/gap.hpp"
#include "cubeforge/grid.hpp"
#include "cubeforge/int_set.hpp"
#include "cubeforge/ramsey.hpp"
#include "cubeforge/sidon.hpp"

namespace cubeforge {

using Json = nlohmann::ordered_json;

/// Whole file as a string; ParseError when it cannot be opened.
std::string read_text_file(const std::string& path);

/// Integers separated by whitespace and/or commas; '#' runs to end of line.
IntSet parse_set(std::string_view text);

/// `a; d1,d2,...; m1..M1, m2..M2, ...` with half-open ranges (m_i, M_i].
Gap parse_gap(std::string_view text);

/// One point per line, comma-separated; optional first line `box: N1,N2,...`.
GridSet parse_grid(std::string_view text);

/// One digit per position. r defaults to max digit + 1 (at least 2).
Coloring parse_coloring(std::string_view text, int r = 0);

Json to_json(const IntSet& s);
Json to_json(const ApWitness& ap);
Json to_json(const Gap& q);
Json to_json(const Rank2Decomposition& d);
Json to_json(const CollisionWitness& w);
Json to_json(const GridSet& g);
Json to_json(const StackDecomposition& s);
/// Bases are points of Z^base_dim (the first d-1 coordinates).
Json to_json(const DyadicSelection& s, int base_dim);
Json to_json(const DenseGapReport& r);
Json to_json(const CubeWitness& w);
Json to_json(const ProbabilityEstimate& p);
Json to_json(const RamseyResult& r);
Json to_json(const CensusResult& c);
Json to_json(const ConsistencyReport& c);
Json to_json(const GrowthStep& s);
Json to_json(const GrowthTrace& t);

}  // namespace cubeforge
