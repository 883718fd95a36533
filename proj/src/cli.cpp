#include "limsup/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "limsup/errors.hpp"
#include "limsup/estimators.hpp"
#include "limsup/formulas.hpp"
#include "limsup/generators.hpp"
#include "limsup/io.hpp"
#include "limsup/series.hpp"
#include "limsup/transference.hpp"

namespace limsup::cli {

namespace {

using io::Json;

struct Options {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool timing = false;

  std::string name;
  int n = 1;
  int m = 1;
  int k = 1;
  int k0 = 1;
  double lambda = 0.0;
  double nu = 1.0;
  double s0 = 0.0;
  double alpha = 0.0;
  std::string tau;
  std::string a;
  std::string t;
  std::string ratios;
  std::string maps;
  std::string sigma;
  std::string y;
  std::string levels;
  std::string center = "0";
  std::string psi;
  std::string f;
  std::string g;
  std::string base;
  std::string radii;
  std::string kind;
  std::string setting;
  std::string family = "approx";
  std::string filter = "all";
  std::string shape = "box";
  std::string s;
  double series_t = 1.0;
  double exponent = 0.0;
  double log_exponent = 0.0;
  double radius = 0.0;
  std::uint64_t max_q = 0;
  std::uint64_t q_min = 1;
  int depth = 20;
  std::uint64_t count = 0;
  std::uint64_t tail_start = 1;
  std::uint64_t samples = kDefaultMcSamples;
  std::uint64_t horizon = 1 << 16;
  bool numeric = false;
  bool inhomogeneous = false;
  bool boxes = false;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct Report {
  Json body;
  std::optional<Table> table;
  int code = kExitOk;
};

std::string normalize(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != '-' && c != '_' && c != ' ') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

// Case- and dash-insensitive lookup; a unique prefix also selects.
template <class E>
E pick(const std::string& text, std::initializer_list<E> values, const char* what) {
  const std::string key = normalize(text);
  std::optional<E> prefix;
  int prefix_hits = 0;
  for (E v : values) {
    const std::string name = normalize(to_string(v));
    if (name == key) return v;
    if (!key.empty() && name.rfind(key, 0) == 0) {
      prefix = v;
      ++prefix_hits;
    }
  }
  if (prefix_hits == 1) return *prefix;
  throw DomainError(std::string("unknown ") + what + " '" + text + "'");
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) parts.push_back(cur);
  return parts;
}

// "6:12" or "6,8,10".
std::vector<std::uint64_t> parse_levels(const std::string& text) {
  std::vector<std::uint64_t> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto lo = std::stoull(text.substr(0, colon));
    const auto hi = std::stoull(text.substr(colon + 1));
    if (lo > hi) throw DomainError("--levels range is empty");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    for (double v : io::parse_list(text)) out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw DomainError(std::string("missing ") + flag);
  return value;
}

Json argmin_json(const MinFormula& f) { return io::to_json(f); }

// ----- dim formula ------------------------------------------------------------

Report dim_formula(const Options& o) {
  const std::string name = normalize(o.name);
  Report r;
  if (name == "jb") {
    r.body = {{"value", io::number(jb_dim(io::parse_list(need(o.tau, "--tau")).at(0)))}};
  } else if (name == "levesley") {
    std::string branch;
    const double v = levesley_dim(o.n, o.m, o.lambda, &branch);
    r.body = {{"value", io::number(v)}, {"branch", branch}};
  } else if (name == "levesleybounds") {
    r.body = io::to_json(levesley_bounds_nonmonotone(o.n, o.m, o.lambda));
  } else if (name == "rynne") {
    r.body = argmin_json(rynne_dim(o.k, io::parse_list(need(o.tau, "--tau")), o.nu));
  } else if (name == "wwx") {
    r.body = argmin_json(wwx_exponent(o.k, io::parse_list(need(o.a, "--a"))));
  } else if (name == "slicing") {
    r.body = argmin_json(slicing_bounds(o.k, o.k0, io::parse_list(need(o.a, "--a"))));
  } else if (name == "rect") {
    r.body = argmin_json(rect_upper_bound(o.k, io::parse_list(need(o.t, "--t")), io::parse_list(need(o.a, "--a"))));
  } else if (name == "similarity") {
    r.body = {{"value", io::number(similarity_dim(io::parse_list(need(o.ratios, "--ratios"))))}};
  } else if (name == "affinity") {
    std::vector<LinearMapSpec> maps;
    for (const auto& part : split_on(need(o.maps, "--maps"), ';')) maps.push_back({io::parse_list(part)});
    r.body = {{"value", io::number(affinity_dim(maps))}};
  } else if (name == "singularvalue") {
    r.body = {{"value", io::number(singular_value_fn(io::parse_list(need(o.sigma, "--sigma")), o.series_t))}};
  } else if (name == "randomcover") {
    double s0 = o.s0;
    if (!o.radii.empty()) s0 = exponent_of_convergence(io::parse_radii(o.radii)).value;
    r.body = {{"value", io::number(random_cover_dim(s0))}};
  } else if (name == "affinecover") {
    std::vector<RadiiRule> rules;
    for (const auto& part : split_on(need(o.sigma, "--sigma"), ';')) rules.push_back(io::parse_radii(part));
    r.body = {{"value", io::number(affine_cover_dim(rules))}};
  } else if (name == "cantor") {
    r.body = {{"value", io::number(cantor_critical(io::parse_list(need(o.tau, "--tau")).at(0)))}};
  } else {
    throw CLI::ValidationError("dim formula", "unknown formula '" + o.name + "'");
  }
  return r;
}

// ----- dim estimate -----------------------------------------------------------

ApproxSetRequest approx_request(const Options& o) {
  ApproxSetRequest req;
  req.setting = pick(o.setting.empty() ? "SimultaneousBalls" : o.setting,
                     {ApproxSetting::SimultaneousBalls, ApproxSetting::WeightedRectangles,
                      ApproxSetting::LinearFormsSlabs, ApproxSetting::CantorRestricted},
                     "approximation setting");
  req.k = o.k;
  req.n = o.n;
  req.m = o.m;
  if (!o.psi.empty()) req.psi = io::parse_approx(o.psi);
  if (!o.y.empty()) req.y = io::parse_list(o.y);
  if (!o.tau.empty()) req.tau = io::parse_list(o.tau);
  req.filter = normalize(o.filter) == "coprime" ? RationalFilter::Coprime : RationalFilter::All;
  return req;
}

Report dim_estimate(const Options& o) {
  NaturalCoverFamily fam;
  const auto levels = parse_levels(need(o.levels, "--levels"));
  std::vector<ScheduleLevel> schedule;
  if (normalize(o.family) == "ifs") {
    fam.kind = FamilyKind::Ifs;
    fam.ratios = io::parse_list(need(o.ratios, "--ratios"));
    for (auto d : levels) schedule.push_back({d, 0.0});
  } else if (normalize(o.family) == "approx") {
    fam.approx = approx_request(o);
    // Levels are exponents j of Q = 2^j.
    for (auto j : levels) {
      if (j < 1 || j > 40) throw DomainError("--levels exponents must lie in 1..40");
      schedule.push_back({std::uint64_t{1} << j, 0.0});
    }
  } else {
    throw DomainError("--family must be approx or ifs");
  }
  const auto est = natural_cover_estimate(fam, schedule);
  Report r;
  r.body = io::to_json(est);
  Table t{{"delta", "count"}, {}};
  for (const auto& s : est.scales) t.rows.push_back({s.delta, s.count});
  r.table = std::move(t);
  return r;
}

// ----- series -----------------------------------------------------------------

SeriesRequest series_request(const Options& o) {
  SeriesRequest req;
  req.kind = pick(need(o.kind, "--kind"),
                  {SeriesKind::KhintchineSim, SeriesKind::Jarnik, SeriesKind::KG, SeriesKind::KGHausdorff,
                   SeriesKind::DuffinSchaeffer, SeriesKind::CantorLSV, SeriesKind::PowerRadii, SeriesKind::SVFSum,
                   SeriesKind::PowerLogTerm},
                  "series kind");
  req.k = o.k;
  req.n = o.n;
  req.m = o.m;
  if (!o.psi.empty()) req.psi = io::parse_approx(o.psi);
  if (!o.f.empty()) req.f = io::parse_dimension(o.f);
  if (!o.base.empty()) req.base = io::parse_family(o.base);
  if (!o.radii.empty()) req.radii = io::parse_radii(o.radii);
  for (const auto& part : split_on(o.sigma, ';')) req.sigma.push_back(io::parse_radii(part));
  if (!o.s.empty()) req.s = io::parse_list(o.s).at(0);
  req.t = o.series_t;
  req.term_exponent = o.exponent;
  req.term_log_exponent = o.log_exponent;
  return req;
}

Report series_classify(const Options& o) {
  const auto spec = build_series(series_request(o));
  const std::uint64_t n = o.max_q ? o.max_q : kNumericSeriesCutoff;
  const auto verdict = o.numeric ? classify_numeric(spec, n) : classify(spec);
  Report r;
  r.body = io::to_json(verdict);
  if (!o.out.empty() || o.format == "csv") {
    const auto diag = verdict.diagnostics ? *verdict.diagnostics : partial_sum_diagnostics(spec, n);
    Table t{{"cutoff", "sum"}, {}};
    for (const auto& row : diag.partial_sums) t.rows.push_back({static_cast<double>(row.cutoff), row.sum});
    r.table = std::move(t);
  }
  return r;
}

Report series_exponent(const Options& o) {
  Report r;
  if (!o.radii.empty())
    r.body = io::to_json(exponent_of_convergence(io::parse_radii(o.radii)));
  else
    r.body = io::to_json(exponent_of_convergence(io::parse_family(need(o.base, "--base or --radii"))));
  return r;
}

Report series_content(const Options& o) {
  Report r;
  const auto crit = content_sum_criterion(io::parse_radii(need(o.radii, "--radii")), o.k,
                                          io::parse_dimension(need(o.f, "--f")), !o.boxes);
  r.body = io::to_json(crit);
  return r;
}

// ----- transfer ---------------------------------------------------------------

Report transfer_verdict(const Options& o) {
  DichotomyRequest req;
  Setting setting = pick(need(o.setting, "--setting"),
                         {Setting::KhintchineSim, Setting::Jarnik, Setting::KG, Setting::KGHausdorff,
                          Setting::InhomKGHausdorff, Setting::CantorLSV},
                         "setting");
  req.setting = setting;
  req.n = o.n;
  req.m = o.m;
  req.k = o.k;
  req.psi = io::parse_approx(need(o.psi, "--psi"));
  if (!o.f.empty()) req.f = io::parse_dimension(o.f);
  req.y_present = o.inhomogeneous;
  if (!o.base.empty()) req.base = io::parse_family(o.base);
  const auto res = dichotomy_verdict(req);
  Report r;
  r.body = io::to_json(res);
  if (res.verdict == Verdict::HypothesesNotMet) r.code = kExitHypothesis;
  return r;
}

Report transfer_ball(const Options& o) {
  BallSpec b;
  b.center = io::parse_list(o.center);
  b.k = o.k;
  b.radius = o.radius;
  if (static_cast<int>(b.center.size()) != b.k) b.center.assign(static_cast<std::size_t>(b.k), b.center.at(0));
  const auto f = io::parse_dimension(need(o.f, "--f"));
  Report r;
  r.body = io::to_json(o.g.empty() ? ball_f_transform(b, f) : ball_fg_transform(b, f, io::parse_dimension(o.g)));
  return r;
}

Report transfer_theta(const Options& o) {
  const auto theta = theta_transform(io::parse_approx(need(o.psi, "--psi")), io::parse_dimension(need(o.f, "--f")),
                                     o.n, o.m, o.horizon);
  Report r;
  r.body = {{"theta", io::to_json(theta)}};
  return r;
}

// ----- generate / simulate ----------------------------------------------------

Report generate(const Options& o) {
  CoverSpec cover;
  if (!o.ratios.empty()) {
    cover = ifs_cover(io::parse_list(o.ratios), o.depth);
  } else {
    auto req = approx_request(o);
    if (o.max_q == 0) throw DomainError("missing --max-q");
    req.q_min = o.q_min;
    req.q_max = o.max_q;
    cover = approx_set_union(req);
  }
  Report r;
  r.body = {{"cover", io::to_json(cover)}, {"measure", io::to_json(union_measure(cover, o.samples, o.seed))}};
  const bool slabs = cover.geometry == Geometry::Slabs;
  Table t;
  for (int a = 1; a <= cover.k; ++a) t.header.push_back((slabs ? "n" : "c") + std::to_string(a));
  if (slabs) {
    t.header.insert(t.header.end(), {"offset", "thickness"});
  } else {
    for (int a = 1; a <= cover.k; ++a) t.header.push_back("h" + std::to_string(a));
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    std::vector<double> row;
    if (slabs) {
      const auto nv = cover.normal(i);
      row.assign(nv.begin(), nv.end());
      row.push_back(cover.offsets[i]);
      row.push_back(cover.thickness[i]);
    } else {
      const auto c = cover.center(i);
      const auto h = cover.half_width(i);
      row.assign(c.begin(), c.end());
      row.insert(row.end(), h.begin(), h.end());
    }
    t.rows.push_back(std::move(row));
  }
  r.table = std::move(t);
  return r;
}

Report simulate_cover(const Options& o) {
  const auto radii = io::parse_radii(need(o.radii, "--radii"));
  if (o.count == 0) throw DomainError("missing --count");
  const auto rc = random_cover(radii, o.count, o.k, o.seed);
  const auto s0 = exponent_of_convergence(radii);
  const auto tail = tail_coverage(rc.sample, o.tail_start, o.count, o.samples);
  Report r;
  r.body = {{"sample", io::to_json(rc.sample)},
            {"tail", {o.tail_start, o.count}},
            {"coverage", io::to_json(tail)},
            {"s0", io::to_json(s0)},
            {"dim", io::number(random_cover_dim(s0.value))}};
  Table t{{"N", "coverage", "standard_error"}, {}};
  for (std::uint64_t n = std::max<std::uint64_t>(o.tail_start, 1); n < o.count; n *= 2) {
    const auto c = tail_coverage(rc.sample, o.tail_start, n, o.samples);
    t.rows.push_back({static_cast<double>(n), c.value, c.standard_error});
  }
  t.rows.push_back({static_cast<double>(o.count), tail.value, tail.standard_error});
  r.table = std::move(t);
  return r;
}

// ----- constructions and diagnostics ------------------------------------------

Report construct_counterexample(const Options& o) {
  const auto p = counterexample_params(o.n, o.m, o.alpha, o.s0);
  Report r;
  r.body = io::to_json(p);
  r.body["lower_order"] = io::number(std::min(o.alpha, p.beta));
  return r;
}

Report run_energy(const Options& o) {
  EnergyDomain dom;
  if (normalize(o.shape) == "ball") {
    dom = unit_ball(o.k);
  } else {
    dom.k = o.k;
    dom.center.assign(static_cast<std::size_t>(o.k), 0.5);
    dom.half_width.assign(static_cast<std::size_t>(o.k), 0.5);
  }
  std::variant<double, DimensionFunction> kernel = 0.0;
  if (!o.f.empty())
    kernel = io::parse_dimension(o.f);
  else
    kernel = io::parse_list(need(o.s, "--s or --f")).at(0);
  Report r;
  r.body = io::to_json(energy(dom, kernel, o.samples, o.seed));
  return r;
}

Report lower_order(const Options& o) {
  Report r;
  r.body = io::to_json(lower_order_diag(io::parse_approx(need(o.psi, "--psi")), o.depth));
  return r;
}

// ----- output -----------------------------------------------------------------

Json option_value(const CLI::Option* opt) {
  if (opt->count() == 0) {
    const std::string d = opt->get_default_str();
    return d.empty() ? Json(nullptr) : Json(d);
  }
  if (opt->get_type_size() == 0) return true;
  const auto& res = opt->results();
  std::string joined;
  for (std::size_t i = 0; i < res.size(); ++i) joined += (i ? "," : "") + res[i];
  return joined;
}

void echo_options(const CLI::App* app, Json& params) {
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "h") continue;
    params[name] = option_value(opt);
  }
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << io::format_number(row[i]);
    out << '\n';
  }
}

// Top-level scalar fields as field,value rows.
void write_flat_csv(std::ostream& out, const Json& body) {
  out << "field,value\n";
  for (const auto& [key, value] : body.items()) {
    if (key == "manifest" || value.is_structured()) continue;
    out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  CLI::App app{"limsup-lab: dimension formulas, dichotomy series and numerical verifiers for limsup sets",
               "limsup-lab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "Seed for Monte Carlo and random covers")->capture_default_str();
  app.add_option("--out", o.out, "CSV side file");
  app.add_option("--format", o.format, "Standard output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("--timing", o.timing, "Record wall time in the manifest");
  app.set_version_flag("--version", kVersion);

  auto* dim = app.add_subcommand("dim", "Dimension formulas and estimates")->require_subcommand(1);
  auto* formula = dim->add_subcommand("formula", "Closed-form dimension values");
  formula->add_option("name", o.name,
                      "jb | levesley | levesley-bounds | rynne | wwx | slicing | rect | similarity | affinity | "
                      "singular-value | random-cover | affine-cover | cantor")
      ->required();
  formula->add_option("--tau", o.tau, "Exponent or exponent vector");
  formula->add_option("--n", o.n)->capture_default_str();
  formula->add_option("--m", o.m)->capture_default_str();
  formula->add_option("--k", o.k)->capture_default_str();
  formula->add_option("--k0", o.k0)->capture_default_str();
  formula->add_option("--lambda", o.lambda);
  formula->add_option("--nu", o.nu)->capture_default_str();
  formula->add_option("--a", o.a, "Exponent vector a");
  formula->add_option("--t", o.t, "Weight vector t");
  formula->add_option("--ratios", o.ratios);
  formula->add_option("--maps", o.maps, "Singular values per map, maps separated by ';'");
  formula->add_option("--sigma", o.sigma, "Singular values, or ';'-separated radii rules for affine-cover");
  formula->add_option("--at", o.series_t, "Argument t of the singular value function");
  formula->add_option("--s0", o.s0);
  formula->add_option("--radii", o.radii);

  auto* estimate = dim->add_subcommand("estimate", "Natural-cover box-count estimate");
  estimate->add_option("--family", o.family, "approx | ifs")->capture_default_str();
  estimate->add_option("--setting", o.setting);
  estimate->add_option("--k", o.k)->capture_default_str();
  estimate->add_option("--n", o.n)->capture_default_str();
  estimate->add_option("--m", o.m)->capture_default_str();
  estimate->add_option("--psi", o.psi);
  estimate->add_option("--tau", o.tau);
  estimate->add_option("--y", o.y);
  estimate->add_option("--filter", o.filter)->capture_default_str();
  estimate->add_option("--ratios", o.ratios);
  estimate->add_option("--levels", o.levels, "lo:hi or a list; log2 Q for approx, depth for ifs")->required();

  auto* series = app.add_subcommand("series", "Dichotomy series")->require_subcommand(1);
  auto* classify_cmd = series->add_subcommand("classify", "Classify a series");
  classify_cmd->add_option("--kind", o.kind)->required();
  classify_cmd->add_option("--k", o.k)->capture_default_str();
  classify_cmd->add_option("--n", o.n)->capture_default_str();
  classify_cmd->add_option("--m", o.m)->capture_default_str();
  classify_cmd->add_option("--psi", o.psi);
  classify_cmd->add_option("--f", o.f);
  classify_cmd->add_option("--base", o.base);
  classify_cmd->add_option("--radii", o.radii);
  classify_cmd->add_option("--sigma", o.sigma);
  classify_cmd->add_option("--s", o.s);
  classify_cmd->add_option("--t", o.series_t)->capture_default_str();
  classify_cmd->add_option("--exponent", o.exponent);
  classify_cmd->add_option("--log-exponent", o.log_exponent);
  classify_cmd->add_option("--max-q", o.max_q, "Numeric cutoff");
  classify_cmd->add_flag("--numeric", o.numeric, "Force the numeric diagnostic");
  auto* exponent_cmd = series->add_subcommand("exponent", "Exponent of convergence");
  exponent_cmd->add_option("--base", o.base);
  exponent_cmd->add_option("--radii", o.radii);
  auto* content_cmd = series->add_subcommand("content", "Content-sum criterion for balls or cubes");
  content_cmd->add_option("--radii", o.radii)->required();
  content_cmd->add_option("--k", o.k)->capture_default_str();
  content_cmd->add_option("--f", o.f)->required();
  content_cmd->add_flag("--boxes", o.boxes, "Cubes of half-width r_i instead of balls");

  auto* transfer = app.add_subcommand("transfer", "Dichotomy verdicts and transference transforms");
  transfer->add_option("--setting", o.setting);
  transfer->add_option("--n", o.n)->capture_default_str();
  transfer->add_option("--m", o.m)->capture_default_str();
  transfer->add_option("--k", o.k)->capture_default_str();
  transfer->add_option("--psi", o.psi);
  transfer->add_option("--f", o.f);
  transfer->add_option("--base", o.base);
  transfer->add_flag("--inhomogeneous", o.inhomogeneous);
  auto* ball = transfer->add_subcommand("ball", "B^f or B^{f,g}");
  ball->add_option("--center", o.center)->capture_default_str();
  ball->add_option("--radius", o.radius)->required();
  ball->add_option("--k", o.k)->capture_default_str();
  ball->add_option("--f", o.f)->required();
  ball->add_option("--g", o.g);
  auto* theta = transfer->add_subcommand("theta", "theta(q) = q g(psi(q)/q)^{1/m}");
  theta->add_option("--psi", o.psi)->required();
  theta->add_option("--f", o.f)->required();
  theta->add_option("--n", o.n)->capture_default_str();
  theta->add_option("--m", o.m)->capture_default_str();
  theta->add_option("--horizon", o.horizon)->capture_default_str();

  auto* gen = app.add_subcommand("generate", "Approximation-set generation or IFS cover");
  gen->add_option("--setting", o.setting);
  gen->add_option("--k", o.k)->capture_default_str();
  gen->add_option("--n", o.n)->capture_default_str();
  gen->add_option("--m", o.m)->capture_default_str();
  gen->add_option("--psi", o.psi);
  gen->add_option("--tau", o.tau);
  gen->add_option("--y", o.y);
  gen->add_option("--q-min", o.q_min)->capture_default_str();
  gen->add_option("--max-q", o.max_q);
  gen->add_option("--filter", o.filter)->capture_default_str();
  gen->add_option("--ratios", o.ratios, "IFS ratios (selects an IFS cover)");
  gen->add_option("--depth", o.depth)->capture_default_str();
  gen->add_option("--samples", o.samples)->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Random covering simulation")->require_subcommand(1);
  auto* sim_cover = simulate->add_subcommand("cover", "Random cover of T^k and tail coverage");
  sim_cover->add_option("--radii", o.radii)->required();
  sim_cover->add_option("--count", o.count, "Number of balls N")->required();
  sim_cover->add_option("--k", o.k)->capture_default_str();
  sim_cover->add_option("--tail", o.tail_start, "First index M of the tail union")->capture_default_str();
  sim_cover->add_option("--samples", o.samples)->capture_default_str();

  auto* construct = app.add_subcommand("construct", "Constructions")->require_subcommand(1);
  auto* counter = construct->add_subcommand("counterexample", "Non-monotone counterexample parameters");
  counter->add_option("--n", o.n)->capture_default_str();
  counter->add_option("--m", o.m)->capture_default_str();
  counter->add_option("--alpha", o.alpha)->required();
  counter->add_option("--s0", o.s0)->required();

  auto* energy_cmd = app.add_subcommand("energy", "Riesz or f-energy of the unit cube or ball");
  energy_cmd->add_option("--k", o.k)->capture_default_str();
  energy_cmd->add_option("--shape", o.shape, "box | ball")->capture_default_str();
  energy_cmd->add_option("--s", o.s);
  energy_cmd->add_option("--f", o.f);
  energy_cmd->add_option("--samples", o.samples)->capture_default_str();

  auto* diagnose = app.add_subcommand("diagnose", "Diagnostics")->require_subcommand(1);
  auto* lower = diagnose->add_subcommand("lower-order", "Running-minimum lower order of psi");
  lower->add_option("--psi", o.psi)->required();
  lower->add_option("--depth", o.depth)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  // Selected chain, e.g. "dim formula".
  std::vector<const CLI::App*> chain{&app};
  for (const CLI::App* cur = &app;;) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
    chain.push_back(cur);
  }
  std::string command;
  for (std::size_t i = 1; i < chain.size(); ++i) command += (i > 1 ? " " : "") + chain[i]->get_name();

  Json manifest;
  manifest["subcommand"] = command;
  Json params = Json::object();
  for (const CLI::App* a : chain) echo_options(a, params);
  manifest["params"] = params;
  manifest["seed"] = o.seed;
  manifest["version"] = kVersion;

  const auto finish = [&](Json& body) {
    if (o.timing)
      manifest["wall_time_s"] =
          io::number(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    body["manifest"] = manifest;
  };

  Report report;
  try {
    if (command == "dim formula") report = dim_formula(o);
    else if (command == "dim estimate") report = dim_estimate(o);
    else if (command == "series classify") report = series_classify(o);
    else if (command == "series exponent") report = series_exponent(o);
    else if (command == "series content") report = series_content(o);
    else if (command == "transfer") report = transfer_verdict(o);
    else if (command == "transfer ball") report = transfer_ball(o);
    else if (command == "transfer theta") report = transfer_theta(o);
    else if (command == "generate") report = generate(o);
    else if (command == "simulate cover") report = simulate_cover(o);
    else if (command == "construct counterexample") report = construct_counterexample(o);
    else if (command == "energy") report = run_energy(o);
    else if (command == "diagnose lower-order") report = lower_order(o);
    else throw CLI::ValidationError(command, "no handler");
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const HypothesisError& e) {
    Json body = {{"error", "HypothesisError"}, {"failed_hypothesis", e.condition()}};
    finish(body);
    out << io::dump(body) << '\n';
    err << "hypothesis not met: " << e.condition() << '\n';
    return kExitHypothesis;
  } catch (const std::logic_error& e) {
    // DomainError, RangeError, SizeError, UnsupportedError and bad numeric input.
    Json body = {{"error", "DomainError"}, {"failed_hypothesis", e.what()}};
    finish(body);
    out << io::dump(body) << '\n';
    err << "error: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }

  finish(report.body);
  try {
    if (!o.out.empty()) {
      if (report.table) {
        io::write_rows_csv(o.out, report.table->header, report.table->rows);
      } else {
        std::ostringstream flat;
        write_flat_csv(flat, report.body);
        std::ofstream f(o.out);
        if (!f || !(f << flat.str())) throw std::runtime_error("cannot write " + o.out);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  if (o.format == "csv") {
    if (report.table)
      write_csv(out, *report.table);
    else
      write_flat_csv(out, report.body);
  } else {
    out << io::dump(report.body) << '\n';
  }
  return report.code;
}

}  // namespace limsup::cli
