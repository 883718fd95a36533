#pragma once

// JSON and CSV forms of inputs and results, and the flag mini-grammar for
// function families. Floats are written with 12 significant digits; fields keep
// insertion order so equal inputs give byte-identical text.

#include <string>
#include <vector>

#include <json.hpp>

#include "limsup/core.hpp"
#include "limsup/cover.hpp"
#include "limsup/estimators.hpp"
#include "limsup/formulas.hpp"
#include "limsup/generators.hpp"
#include "limsup/series.hpp"
#include "limsup/transference.hpp"

namespace limsup::io {

using Json = nlohmann::ordered_json;

double round12(double x);
// Rounded number, or null for inf/nan.
Json number(double x);
std::string dump(const Json& j);

Json to_json(const IndexFamily& v);
Json to_json(const DimensionFunction& v);
Json to_json(const ApproxFunction& v);
Json to_json(const RadiiRule& v);
Json to_json(const SequenceRule& v);
Json to_json(const MinFormula& v);
Json to_json(const Bounds& v);
Json to_json(const CounterexampleParams& v);
Json to_json(const SeriesDiagnostics& v);
Json to_json(const SeriesVerdict& v);
Json to_json(const DichotomyResult& v);
Json to_json(const ConvergenceExponent& v);
Json to_json(const BallSpec& v);
Json to_json(const CoverSpec& v);
Json to_json(const RandomCoverSample& v);
Json to_json(const MeasureResult& v);
Json to_json(const DimensionEstimate& v);
Json to_json(const EnergyResult& v);
Json to_json(const ContentCriterion& v);
Json to_json(const LowerOrderResult& v);

// Inverse of to_json; throws DomainError on malformed input.
template <class T>
T from_json(const Json& j);
template <>
IndexFamily from_json<IndexFamily>(const Json& j);
template <>
DimensionFunction from_json<DimensionFunction>(const Json& j);
template <>
ApproxFunction from_json<ApproxFunction>(const Json& j);
template <>
RadiiRule from_json<RadiiRule>(const Json& j);
template <>
MinFormula from_json<MinFormula>(const Json& j);
template <>
Bounds from_json<Bounds>(const Json& j);
template <>
CounterexampleParams from_json<CounterexampleParams>(const Json& j);
template <>
SeriesDiagnostics from_json<SeriesDiagnostics>(const Json& j);
template <>
SeriesVerdict from_json<SeriesVerdict>(const Json& j);
template <>
DichotomyResult from_json<DichotomyResult>(const Json& j);
template <>
ConvergenceExponent from_json<ConvergenceExponent>(const Json& j);
template <>
BallSpec from_json<BallSpec>(const Json& j);
template <>
CoverSpec from_json<CoverSpec>(const Json& j);
template <>
RandomCoverSample from_json<RandomCoverSample>(const Json& j);
template <>
MeasureResult from_json<MeasureResult>(const Json& j);
template <>
DimensionEstimate from_json<DimensionEstimate>(const Json& j);
template <>
EnergyResult from_json<EnergyResult>(const Json& j);
template <>
ContentCriterion from_json<ContentCriterion>(const Json& j);
template <>
LowerOrderResult from_json<LowerOrderResult>(const Json& j);

// Mini-grammar. Approximating functions: pow:<tau>, piecewise:<a>:<b>:poly:<p>,
// piecewise:<a>:<b>:geom:<base>, sampled:@file.csv (rows q,value).
// Dimension functions: pow:<s>, powlog:<s>:<b>, sampled:@file.csv (rows r,value).
// Radii: pow:<p>[:<c>], geom:<ratio>[:<c>], sampled:@file.csv (one value per row).
// Index families: all, geom:<base>, poly:<p>, finite:<q1>,<q2>,...
ApproxFunction parse_approx(const std::string& text);
DimensionFunction parse_dimension(const std::string& text);
RadiiRule parse_radii(const std::string& text);
IndexFamily parse_family(const std::string& text);
std::vector<double> parse_list(const std::string& text);

// Two-column numeric CSV; a non-numeric first row is treated as a header.
std::vector<std::pair<double, double>> read_pairs_csv(const std::string& path);
std::vector<double> read_column_csv(const std::string& path);

// Writers throw std::runtime_error when the path cannot be opened.
void write_scales_csv(const std::string& path, const std::vector<ScalePoint>& scales);
void write_cover_csv(const std::string& path, const CoverSpec& cover);
void write_partial_sums_csv(const std::string& path, const std::vector<PartialSumRow>& rows);
void write_rows_csv(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

std::string format_number(double x);

}  // namespace limsup::io
