#include "limsup/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "limsup/errors.hpp"

namespace limsup::io {

namespace {

std::string monotonicity_name(Monotonicity m) {
  switch (m) {
    case Monotonicity::NonIncreasing: return "NonIncreasing";
    case Monotonicity::NonMonotone: return "NonMonotone";
    case Monotonicity::Unknown: return "Unknown";
  }
  return "Unknown";
}

Monotonicity monotonicity_from_name(const std::string& s) {
  if (s == "NonIncreasing") return Monotonicity::NonIncreasing;
  if (s == "NonMonotone") return Monotonicity::NonMonotone;
  if (s == "Unknown") return Monotonicity::Unknown;
  throw DomainError("unknown monotonicity '" + s + "'");
}

Json numbers(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

// Null stands for a non-finite value.
double real(const Json& j, double if_null = std::numeric_limits<double>::infinity()) {
  if (j.is_null()) return if_null;
  if (!j.is_number()) throw DomainError("expected a number in JSON input");
  return j.get<double>();
}

double field(const Json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("missing JSON field '") + key + "'");
  return real(j.at(key));
}

std::vector<double> reals(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(real(x));
  return out;
}

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

std::optional<double> optional_real(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw DomainError("not a number: '" + s + "'");
  return v;
}

std::uint64_t to_u64(const std::string& s) {
  char* end = nullptr;
  const auto v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || s[0] == '-') throw DomainError("not a non-negative integer: '" + s + "'");
  return v;
}

std::string file_arg(const std::string& s) {
  if (s.size() < 2 || s[0] != '@') throw DomainError("sampled forms take @file.csv");
  return s.substr(1);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

std::string dump(const Json& j) { return j.dump(); }

// ----- function families ------------------------------------------------------

Json to_json(const IndexFamily& v) {
  return std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, AllNaturals>) return {{"form", "all"}};
        else if constexpr (std::is_same_v<T, GeometricPowers>) return {{"form", "geometric"}, {"base", f.base}};
        else if constexpr (std::is_same_v<T, PolynomialCeil>) return {{"form", "poly"}, {"exponent", number(f.exponent)}};
        else return {{"form", "finite"}, {"members", f.members}};
      },
      v.form());
}

template <>
IndexFamily from_json<IndexFamily>(const Json& j) try {
  const std::string form = j.at("form").get<std::string>();
  if (form == "all") return IndexFamily::all_naturals();
  if (form == "geometric") return IndexFamily::geometric(j.at("base").get<std::uint64_t>());
  if (form == "poly") return IndexFamily::polynomial_ceil(field(j, "exponent"));
  if (form == "finite") return IndexFamily::explicit_finite(j.at("members").get<std::vector<std::uint64_t>>());
  throw DomainError("unknown index family form '" + form + "'");
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const DimensionFunction& v) {
  if (const auto* p = v.power_log_form()) return {{"form", "powlog"}, {"s", number(p->s)}, {"b", number(p->b)}};
  const auto& t = std::get<SampledDimension>(v.form());
  return {{"form", "sampled"}, {"r", numbers(t.r)}, {"value", numbers(t.value)}};
}

template <>
DimensionFunction from_json<DimensionFunction>(const Json& j) try {
  const std::string form = j.at("form").get<std::string>();
  if (form == "powlog") return DimensionFunction::power_log(field(j, "s"), field(j, "b"));
  if (form == "sampled") {
    const auto r = reals(j.at("r"));
    const auto v = reals(j.at("value"));
    if (r.size() != v.size()) throw DomainError("sampled table columns differ in length");
    std::vector<std::pair<double, double>> table;
    for (std::size_t i = 0; i < r.size(); ++i) table.emplace_back(r[i], v[i]);
    return DimensionFunction::sampled(std::move(table));
  }
  throw DomainError("unknown dimension function form '" + form + "'");
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const ApproxFunction& v) {
  Json j = std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerApprox>) {
          return {{"form", "power"}, {"tau", number(f.tau)}};
        } else if constexpr (std::is_same_v<T, PiecewisePower>) {
          return {{"form", "piecewise"}, {"alpha", number(f.alpha)}, {"beta", number(f.beta)}, {"on_set", to_json(f.on_set)}};
        } else {
          return {{"form", "sampled"}, {"q", f.q}, {"value", numbers(f.value)}};
        }
      },
      v.form());
  j["monotonicity"] = monotonicity_name(v.monotonicity());
  return j;
}

template <>
ApproxFunction from_json<ApproxFunction>(const Json& j) try {
  const std::string form = j.at("form").get<std::string>();
  ApproxFunction psi = ApproxFunction::power(1.0);
  if (form == "power") {
    psi = ApproxFunction::power(field(j, "tau"));
  } else if (form == "piecewise") {
    psi = ApproxFunction::piecewise(field(j, "alpha"), field(j, "beta"), from_json<IndexFamily>(j.at("on_set")));
  } else if (form == "sampled") {
    const auto q = j.at("q").get<std::vector<std::uint64_t>>();
    const auto v = reals(j.at("value"));
    if (q.size() != v.size()) throw DomainError("sampled table columns differ in length");
    std::vector<std::pair<std::uint64_t, double>> table;
    for (std::size_t i = 0; i < q.size(); ++i) table.emplace_back(q[i], v[i]);
    psi = ApproxFunction::sampled(std::move(table));
  } else {
    throw DomainError("unknown approximating function form '" + form + "'");
  }
  if (j.contains("monotonicity")) psi = psi.with_monotonicity(monotonicity_from_name(j.at("monotonicity").get<std::string>()));
  return psi;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const RadiiRule& v) {
  return std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerDecay>)
          return {{"form", "power"}, {"coeff", number(f.coeff)}, {"p", number(f.p)}};
        else if constexpr (std::is_same_v<T, GeometricDecay>)
          return {{"form", "geometric"}, {"coeff", number(f.coeff)}, {"ratio", number(f.ratio)}};
        else
          return {{"form", "sampled"}, {"values", numbers(f.values)}};
      },
      v.form());
}

template <>
RadiiRule from_json<RadiiRule>(const Json& j) try {
  const std::string form = j.at("form").get<std::string>();
  if (form == "power") return RadiiRule::power(field(j, "p"), field(j, "coeff"));
  if (form == "geometric") return RadiiRule::geometric(field(j, "ratio"), field(j, "coeff"));
  if (form == "sampled") return RadiiRule::sampled(reals(j.at("values")));
  throw DomainError("unknown radii form '" + form + "'");
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const SequenceRule& v) {
  if (const auto* r = std::get_if<RadiiRule>(&v)) return to_json(*r);
  const auto& s = std::get<PowerLogSequence>(v);
  return {{"form", "powerlog"},      {"coeff", number(s.coeff)},         {"p", number(s.p)},
          {"log_scale", number(s.log_scale)}, {"log_shift", number(s.log_shift)}, {"log_exponent", number(s.log_exponent)}};
}

// ----- formula results --------------------------------------------------------

Json to_json(const MinFormula& v) { return {{"value", number(v.value)}, {"argmin", v.argmin}}; }

template <>
MinFormula from_json<MinFormula>(const Json& j) try {
  MinFormula v;
  v.value = field(j, "value");
  if (j.contains("argmin")) v.argmin = j.at("argmin").get<std::vector<int>>();
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const Bounds& v) { return {{"lower", number(v.lower)}, {"upper", number(v.upper)}}; }

template <>
Bounds from_json<Bounds>(const Json& j) try {
  return {field(j, "lower"), field(j, "upper")};
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const CounterexampleParams& v) {
  return {{"beta", number(v.beta)}, {"gamma", number(v.gamma)}, {"on_set", to_json(v.on_set)}, {"psi", to_json(v.psi)}};
}

template <>
CounterexampleParams from_json<CounterexampleParams>(const Json& j) try {
  CounterexampleParams v;
  v.beta = field(j, "beta");
  v.gamma = field(j, "gamma");
  v.on_set = from_json<IndexFamily>(j.at("on_set"));
  v.psi = from_json<ApproxFunction>(j.at("psi"));
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

// ----- series -----------------------------------------------------------------

Json to_json(const SeriesDiagnostics& v) {
  Json rows = Json::array();
  for (const auto& r : v.partial_sums) rows.push_back({{"cutoff", r.cutoff}, {"sum", number(r.sum)}});
  return {{"partial_sums", rows},
          {"tail_slope", number(v.tail_slope)},
          {"fitted_exponent", number(v.fitted_exponent)},
          {"n_max", v.n_max},
          {"saturated", v.saturated}};
}

template <>
SeriesDiagnostics from_json<SeriesDiagnostics>(const Json& j) try {
  SeriesDiagnostics v;
  for (const auto& r : j.at("partial_sums")) v.partial_sums.push_back({r.at("cutoff").get<std::uint64_t>(), real(r.at("sum"))});
  v.tail_slope = field(j, "tail_slope");
  v.fitted_exponent = field(j, "fitted_exponent");
  v.n_max = j.at("n_max").get<std::uint64_t>();
  v.saturated = j.at("saturated").get<bool>();
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const SeriesVerdict& v) {
  return {{"class", to_string(v.cls)},
          {"method", to_string(v.method)},
          {"exponent", optional_number(v.exponent)},
          {"log_exponent", optional_number(v.log_exponent)},
          {"diagnostics", v.diagnostics ? to_json(*v.diagnostics) : Json(nullptr)}};
}

template <>
SeriesVerdict from_json<SeriesVerdict>(const Json& j) try {
  SeriesVerdict v;
  v.cls = series_class_from_string(j.at("class").get<std::string>());
  v.method = series_method_from_string(j.at("method").get<std::string>());
  v.exponent = optional_real(j, "exponent");
  v.log_exponent = optional_real(j, "log_exponent");
  if (j.contains("diagnostics") && !j.at("diagnostics").is_null())
    v.diagnostics = from_json<SeriesDiagnostics>(j.at("diagnostics"));
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const ConvergenceExponent& v) {
  return {{"value", number(v.value)}, {"exact", v.exact}, {"half_width", number(v.half_width)}};
}

template <>
ConvergenceExponent from_json<ConvergenceExponent>(const Json& j) try {
  return {field(j, "value"), j.at("exact").get<bool>(), field(j, "half_width")};
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

// ----- transference -----------------------------------------------------------

Json to_json(const DichotomyResult& v) {
  return {{"verdict", to_string(v.verdict)},
          {"failed_hypothesis", v.failed_hypothesis.empty() ? Json(nullptr) : Json(v.failed_hypothesis)},
          {"series", v.series ? to_json(*v.series) : Json(nullptr)}};
}

template <>
DichotomyResult from_json<DichotomyResult>(const Json& j) try {
  DichotomyResult v;
  v.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (!j.at("failed_hypothesis").is_null()) v.failed_hypothesis = j.at("failed_hypothesis").get<std::string>();
  if (!j.at("series").is_null()) v.series = from_json<SeriesVerdict>(j.at("series"));
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const BallSpec& v) { return {{"center", numbers(v.center)}, {"radius", number(v.radius)}, {"k", v.k}}; }

template <>
BallSpec from_json<BallSpec>(const Json& j) try {
  return {reals(j.at("center")), field(j, "radius"), j.at("k").get<int>()};
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

// ----- covers -----------------------------------------------------------------

Json to_json(const CoverSpec& v) {
  Json j = {{"k", v.k},
            {"geometry", to_string(v.geometry)},
            {"torus", v.torus},
            {"window", {v.window_lo, v.window_hi}},
            {"elements", v.size()}};
  if (v.geometry == Geometry::Slabs) {
    j["normals"] = numbers(v.normals);
    j["offsets"] = numbers(v.offsets);
    j["thickness"] = numbers(v.thickness);
  } else {
    j["centers"] = numbers(v.centers);
    j["half_widths"] = numbers(v.half_widths);
  }
  return j;
}

template <>
CoverSpec from_json<CoverSpec>(const Json& j) try {
  CoverSpec v = make_cover(j.at("k").get<int>(), geometry_from_string(j.at("geometry").get<std::string>()),
                           j.at("torus").get<bool>());
  v.window_lo = j.at("window").at(0).get<std::uint64_t>();
  v.window_hi = j.at("window").at(1).get<std::uint64_t>();
  if (v.geometry == Geometry::Slabs) {
    v.normals = reals(j.at("normals"));
    v.offsets = reals(j.at("offsets"));
    v.thickness = reals(j.at("thickness"));
  } else {
    v.centers = reals(j.at("centers"));
    v.half_widths = reals(j.at("half_widths"));
  }
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const RandomCoverSample& v) {
  return {{"seed", v.seed}, {"radii", to_json(v.radii)}, {"k", v.k}, {"n", v.n}};
}

template <>
RandomCoverSample from_json<RandomCoverSample>(const Json& j) try {
  return random_cover(from_json<RadiiRule>(j.at("radii")), j.at("n").get<std::uint64_t>(), j.at("k").get<int>(),
                      j.at("seed").get<std::uint64_t>())
      .sample;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

// ----- estimators -------------------------------------------------------------

Json to_json(const MeasureResult& v) {
  return {{"value", number(v.value)}, {"standard_error", number(v.standard_error)}, {"exact", v.exact}};
}

template <>
MeasureResult from_json<MeasureResult>(const Json& j) try {
  return {field(j, "value"), field(j, "standard_error"), j.at("exact").get<bool>()};
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const DimensionEstimate& v) {
  Json scales = Json::array();
  for (const auto& s : v.scales) scales.push_back({{"delta", number(s.delta)}, {"count", number(s.count)}});
  return {{"value", number(v.value)},
          {"half_width", number(v.half_width)},
          {"infinite_width", v.infinite_width},
          {"residual", number(v.residual)},
          {"scales", scales}};
}

template <>
DimensionEstimate from_json<DimensionEstimate>(const Json& j) try {
  DimensionEstimate v;
  v.value = field(j, "value");
  v.half_width = field(j, "half_width");
  v.infinite_width = j.at("infinite_width").get<bool>();
  v.residual = field(j, "residual");
  for (const auto& s : j.at("scales")) v.scales.push_back({field(s, "delta"), field(s, "count")});
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const EnergyResult& v) {
  return {{"energy", number(v.energy)},
          {"standard_error", number(v.standard_error)},
          {"divergent", v.divergent},
          {"g", number(v.g)},
          {"g_standard_error", number(v.g_standard_error)},
          {"samples", v.samples}};
}

template <>
EnergyResult from_json<EnergyResult>(const Json& j) try {
  EnergyResult v;
  v.energy = field(j, "energy");
  v.standard_error = field(j, "standard_error");
  v.divergent = j.at("divergent").get<bool>();
  v.g = field(j, "g");
  v.g_standard_error = field(j, "g_standard_error");
  v.samples = j.at("samples").get<std::uint64_t>();
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const ContentCriterion& v) {
  return {{"verdict", to_json(v.verdict)},
          {"upper_sum", number(v.upper_sum)},
          {"lower_sum", number(v.lower_sum)},
          {"elements", v.elements}};
}

template <>
ContentCriterion from_json<ContentCriterion>(const Json& j) try {
  ContentCriterion v;
  v.verdict = from_json<SeriesVerdict>(j.at("verdict"));
  v.upper_sum = field(j, "upper_sum");
  v.lower_sum = field(j, "lower_sum");
  v.elements = j.at("elements").get<std::uint64_t>();
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

Json to_json(const LowerOrderResult& v) {
  return {{"lambda_full", number(v.lambda_full)},
          {"lambda_dyadic", number(v.lambda_dyadic)},
          {"exact", optional_number(v.exact)},
          {"window", {v.window_lo, v.window_hi}},
          {"points", v.points}};
}

template <>
LowerOrderResult from_json<LowerOrderResult>(const Json& j) try {
  LowerOrderResult v;
  v.lambda_full = field(j, "lambda_full");
  v.lambda_dyadic = field(j, "lambda_dyadic");
  v.exact = optional_real(j, "exact");
  v.window_lo = j.at("window").at(0).get<std::uint64_t>();
  v.window_hi = j.at("window").at(1).get<std::uint64_t>();
  v.points = j.at("points").get<std::uint64_t>();
  return v;
} catch (const Json::exception& e) {
  throw DomainError(std::string("malformed JSON: ") + e.what());
}

// ----- mini-grammar -----------------------------------------------------------

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(to_double(part));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

IndexFamily parse_family(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw DomainError("empty index family");
  if (parts[0] == "all" && parts.size() == 1) return IndexFamily::all_naturals();
  if (parts[0] == "geom" && parts.size() == 2) return IndexFamily::geometric(to_u64(parts[1]));
  if (parts[0] == "poly" && parts.size() == 2) return IndexFamily::polynomial_ceil(to_double(parts[1]));
  if (parts[0] == "finite" && parts.size() == 2) {
    std::vector<std::uint64_t> members;
    for (const auto& m : split(parts[1], ',')) members.push_back(to_u64(m));
    return IndexFamily::explicit_finite(std::move(members));
  }
  throw DomainError("cannot parse index family '" + text + "'");
}

ApproxFunction parse_approx(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "pow") return ApproxFunction::power(to_double(parts[1]));
  if (parts.size() == 5 && parts[0] == "piecewise") {
    const std::string fam = parts[3] + ":" + parts[4];
    return ApproxFunction::piecewise(to_double(parts[1]), to_double(parts[2]), parse_family(fam));
  }
  if (parts.size() == 2 && parts[0] == "sampled") {
    std::vector<std::pair<std::uint64_t, double>> table;
    for (const auto& [q, v] : read_pairs_csv(file_arg(parts[1]))) {
      if (!(q >= 1.0) || q != std::floor(q)) throw DomainError("sampled psi needs positive integer q");
      table.emplace_back(static_cast<std::uint64_t>(q), v);
    }
    return ApproxFunction::sampled(std::move(table));
  }
  throw DomainError("cannot parse approximating function '" + text + "'");
}

DimensionFunction parse_dimension(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "pow") return DimensionFunction::power(to_double(parts[1]));
  if (parts.size() == 3 && parts[0] == "powlog") return DimensionFunction::power_log(to_double(parts[1]), to_double(parts[2]));
  if (parts.size() == 2 && parts[0] == "sampled") return DimensionFunction::sampled(read_pairs_csv(file_arg(parts[1])));
  throw DomainError("cannot parse dimension function '" + text + "'");
}

RadiiRule parse_radii(const std::string& text) {
  const auto parts = split(text, ':');
  if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "pow")
    return RadiiRule::power(to_double(parts[1]), parts.size() == 3 ? to_double(parts[2]) : 1.0);
  if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "geom")
    return RadiiRule::geometric(to_double(parts[1]), parts.size() == 3 ? to_double(parts[2]) : 1.0);
  if (parts.size() == 2 && parts[0] == "sampled") return RadiiRule::sampled(read_column_csv(file_arg(parts[1])));
  throw DomainError("cannot parse radii rule '" + text + "'");
}

// ----- CSV --------------------------------------------------------------------

namespace {

std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    std::vector<double> row;
    try {
      for (const auto& c : cells) row.push_back(to_double(c));
    } catch (const DomainError&) {
      if (first) {
        first = false;
        continue;
      }
      throw DomainError("non-numeric row in " + path + ": " + line);
    }
    first = false;
    if (row.size() != columns) throw DomainError("expected " + std::to_string(columns) + " columns in " + path);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<std::pair<double, double>> read_pairs_csv(const std::string& path) {
  std::vector<std::pair<double, double>> out;
  for (const auto& row : read_csv(path, 2)) out.emplace_back(row[0], row[1]);
  return out;
}

std::vector<double> read_column_csv(const std::string& path) {
  std::vector<double> out;
  for (const auto& row : read_csv(path, 1)) out.push_back(row[0]);
  return out;
}

void write_rows_csv(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_scales_csv(const std::string& path, const std::vector<ScalePoint>& scales) {
  std::vector<std::vector<double>> rows;
  for (const auto& s : scales) rows.push_back({s.delta, s.count});
  write_rows_csv(path, {"delta", "count"}, rows);
}

void write_partial_sums_csv(const std::string& path, const std::vector<PartialSumRow>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) out.push_back({static_cast<double>(r.cutoff), r.sum});
  write_rows_csv(path, {"cutoff", "sum"}, out);
}

void write_cover_csv(const std::string& path, const CoverSpec& cover) {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  const auto k = static_cast<std::size_t>(cover.k);
  if (cover.geometry == Geometry::Slabs) {
    for (std::size_t a = 0; a < k; ++a) header.push_back("n" + std::to_string(a + 1));
    header.insert(header.end(), {"offset", "thickness"});
    for (std::size_t i = 0; i < cover.size(); ++i) {
      const auto n = cover.normal(i);
      std::vector<double> row(n.begin(), n.end());
      row.push_back(cover.offsets[i]);
      row.push_back(cover.thickness[i]);
      rows.push_back(std::move(row));
    }
  } else {
    for (std::size_t a = 0; a < k; ++a) header.push_back("c" + std::to_string(a + 1));
    for (std::size_t a = 0; a < k; ++a) header.push_back("h" + std::to_string(a + 1));
    for (std::size_t i = 0; i < cover.size(); ++i) {
      const auto c = cover.center(i);
      const auto h = cover.half_width(i);
      std::vector<double> row(c.begin(), c.end());
      row.insert(row.end(), h.begin(), h.end());
      rows.push_back(std::move(row));
    }
  }
  write_rows_csv(path, header, rows);
}

}  // namespace limsup::io
