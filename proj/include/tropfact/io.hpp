#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tropfact/amplitude.hpp"
#include "tropfact/factorization.hpp"
#include "tropfact/subdivision.hpp"

namespace tropfact {

using Json = nlohmann::ordered_json;

struct MalformedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const Json& j);

/// {"k":, "n":, "coeffs": [{"J": [...], "c": "p/q"}, ...]}, zero entries omitted.
Json to_json(const HeightVector& h);
HeightVector height_from_json(const Json& j);
/// Same layout with "s" in place of "J"; also used for kinematic points.
Json to_json(const KinematicForm& f);
Json kinematics_to_json(int k, int n, const QVector& s);
QVector kinematics_from_json(const Json& j, int k, int n);
/// {"k":, "n":, "y": [[row 1], ..., [row k-1]]}.
GridVector grid_from_json(const Json& j);
Json to_json(const GridVector& y);

/// Nonzero planar-basis coefficients as [{"J": [...], "c": ...}].
Json planar_json(int k, int n, const QVector& planar);
Json to_json(const Subdivision& s);
Json to_json(const PropagatorSet& p);
Json to_json(const Cone& c);
Json to_json(const FactorizationReport& r);
Json to_json(const PrefactorCheck& p);

/// "c1 s{1,2} + c2 s{1,3} ..." with the given symbol.
std::string expansion_string(const HeightVector& h, const std::string& symbol = "s");
std::string planar_string(int k, int n, const QVector& planar);

/// "[[1,6,9],[2,5,10]]" as subsets of {1..n}.
std::vector<KSubset> parse_collection(const std::string& text, int n);
Json read_json_file(const std::string& path);

}  // namespace tropfact
