#include "limsup/transference.hpp"

#include <algorithm>
#include <cmath>

#include "limsup/errors.hpp"

namespace limsup {

namespace {

constexpr std::uint64_t kTabulateCap = 1'000'000;

void require_g_valid(const DimensionFunction& f, int k, int l) {
  const HypothesisReport report = validate_hypotheses(f, k, l);
  if (!report.g_valid) throw HypothesisError(report.g_reason);
}

// q g(psi/q)^{1/m} with g(r) = r^{-l} f(r); 0 in the psi -> 0 limit.
double theta_value(const DimensionFunction& f, double l, int m, double psi, double q) {
  const double r = psi / q;
  if (!(r > 0.0)) return 0.0;
  return q * std::pow(std::pow(r, -l) * f(r), 1.0 / m);
}

// Values fn(1), fn(2), ... up to cap, stopping at the first non-positive or undefined value.
std::vector<double> tabulate_positive(const std::function<double(std::uint64_t)>& fn, std::uint64_t cap) {
  std::vector<double> out;
  for (std::uint64_t n = 1; n <= cap; ++n) {
    double v = 0.0;
    try {
      v = fn(n);
    } catch (const RangeError&) {
      break;
    }
    if (!(v > 0.0) || !std::isfinite(v)) break;
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("transformed sequence has no positive values");
  return out;
}

}  // namespace

BallSpec ball_f_transform(const BallSpec& b, const DimensionFunction& f) {
  if (!(b.radius > 0.0 && b.radius < 1.0)) throw DomainError("ball radius must lie in (0,1)");
  if (b.k < 1) throw DomainError("ambient dimension k >= 1 required");
  const double fr = f(b.radius);
  if (!(fr > 0.0)) throw DomainError("f(r) <= 0 gives a degenerate ball");
  return {b.center, std::pow(fr, 1.0 / b.k), b.k};
}

BallSpec ball_fg_transform(const BallSpec& b, const DimensionFunction& f, const DimensionFunction& g) {
  const PowerLog* pg = g.power_log_form();
  if (!pg || pg->b != 0.0) throw UnsupportedError("g must be a pure power r^kappa to invert");
  if (!(b.radius > 0.0 && b.radius < 1.0)) throw DomainError("ball radius must lie in (0,1)");
  const double fr = f(b.radius);
  if (!(fr > 0.0)) throw DomainError("f(r) <= 0 gives a degenerate ball");
  return {b.center, std::pow(fr, 1.0 / pg->s), b.k};
}

ResonantFamily::ResonantFamily(int k, int l, std::vector<ResonantPlane> planes, RadiiRule upsilon)
    : k_(k), l_(l), planes_(std::move(planes)), upsilon_(std::move(upsilon)) {
  if (k < 1 || l < 0 || l >= k) throw DomainError("resonant family needs 0 <= l < k");
  const int m = k - l;
  for (auto& plane : planes_) {
    if (static_cast<int>(plane.normals.size()) != m || static_cast<int>(plane.offsets.size()) != m)
      throw DomainError("each plane needs m = k - l normals and offsets");
    // Gram-Schmidt on the rows of N x = c, carrying the offsets along.
    for (int j = 0; j < m; ++j) {
      auto& v = plane.normals[j];
      if (static_cast<int>(v.size()) != k) throw DomainError("plane normal has wrong dimension");
      for (int i = 0; i < j; ++i) {
        const auto& e = plane.normals[i];
        double dot = 0.0;
        for (int a = 0; a < k; ++a) dot += v[a] * e[a];
        for (int a = 0; a < k; ++a) v[a] -= dot * e[a];
        plane.offsets[j] -= dot * plane.offsets[i];
      }
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (!(norm > 1e-12)) throw DomainError("plane normals must be linearly independent");
      for (double& x : v) x /= norm;
      plane.offsets[j] /= norm;
    }
  }
}

double ResonantFamily::distance(std::size_t plane, std::span<const double> x) const {
  const auto& p = planes_.at(plane);
  double d2 = 0.0;
  for (std::size_t j = 0; j < p.normals.size(); ++j) {
    double dot = -p.offsets[j];
    for (int a = 0; a < k_; ++a) dot += p.normals[j][a] * x[a];
    d2 += dot * dot;
  }
  return std::sqrt(d2);
}

bool ResonantFamily::in_neighbourhood(std::uint64_t n, std::span<const double> x) const {
  if (n == 0 || n > planes_.size()) throw RangeError("plane index out of range");
  return distance(n - 1, x) < upsilon_(n);
}

double eval_sequence(const SequenceRule& rule, std::uint64_t n) {
  if (const auto* r = std::get_if<RadiiRule>(&rule)) return (*r)(n);
  const auto& s = std::get<PowerLogSequence>(rule);
  if (n == 0) throw DomainError("sequences are indexed from 1");
  const double x = static_cast<double>(n);
  double v = s.coeff * std::pow(x, -s.p);
  if (s.log_exponent != 0.0) v *= std::pow(std::max(s.log_scale * std::log(x) + s.log_shift, 1.0), s.log_exponent);
  return v;
}

SequenceRule upsilon_transform(const ResonantFamily& family, const DimensionFunction& f) {
  const int l = family.l();
  const int m = family.m();
  require_g_valid(f, family.k(), l);
  const RadiiRule& ups = family.upsilon();
  const PowerLog* pl = f.power_log_form();
  if (pl) {
    const double e = (pl->s - l) / m;
    const double bb = pl->b / m;
    if (const auto* p = std::get_if<PowerDecay>(&ups.form())) {
      if (bb == 0.0 && e > 0.0) return RadiiRule::power(p->p * e, std::pow(p->coeff, e));
      return PowerLogSequence{std::pow(p->coeff, e), p->p * e, p->p, -std::log(p->coeff), bb};
    }
    if (const auto* g = std::get_if<GeometricDecay>(&ups.form()); g && bb == 0.0 && e > 0.0)
      return RadiiRule::geometric(std::pow(g->ratio, e), std::pow(g->coeff, e));
  }
  const double ld = l;
  const auto value = [&](std::uint64_t n) {
    if (n > ups.max_index()) throw RangeError("beyond Upsilon table");
    const double r = ups(n);
    return std::pow(std::pow(r, -ld) * f(r), 1.0 / m);
  };
  return RadiiRule::sampled(tabulate_positive(value, std::min(ups.max_index(), kTabulateCap)));
}

ApproxFunction theta_transform(const ApproxFunction& psi, const DimensionFunction& f, int n, int m,
                               std::uint64_t horizon) {
  if (n < 1 || m < 1) throw DomainError("n, m >= 1 required");
  const int l = m * (n - 1);
  require_g_valid(f, n * m, l);
  const PowerLog* pl = f.power_log_form();
  if (pl && pl->b == 0.0) {
    const double e = (pl->s - l) / m;
    // q (q^{-tau-1})^e = q^{-((tau+1)e - 1)}.
    if (const auto* p = std::get_if<PowerApprox>(&psi.form())) return ApproxFunction::power((p->tau + 1.0) * e - 1.0);
    if (const auto* p = std::get_if<PiecewisePower>(&psi.form()))
      return ApproxFunction::piecewise((p->alpha + 1.0) * e - 1.0, (p->beta + 1.0) * e - 1.0, p->on_set);
  }
  std::vector<std::pair<std::uint64_t, double>> table;
  const auto push = [&](std::uint64_t q, double v) {
    table.emplace_back(q, theta_value(f, l, m, v, static_cast<double>(q)));
  };
  try {
    if (const auto* s = std::get_if<SampledApprox>(&psi.form())) {
      for (std::size_t i = 0; i < s->q.size(); ++i) push(s->q[i], s->value[i]);
    } else {
      for (std::uint64_t q = 1; q <= horizon; ++q) push(q, psi(q));
    }
  } catch (const RangeError&) {
    // Sampled f ran out of table: keep the prefix.
  }
  if (table.empty()) throw DomainError("theta transform produced no values");
  return ApproxFunction::sampled(std::move(table));
}

VectorQRule theta_transform(const VectorQRule& psi, const DimensionFunction& f, int n, int m) {
  if (n < 1 || m < 1) throw DomainError("n, m >= 1 required");
  const int l = m * (n - 1);
  require_g_valid(f, n * m, l);
  return [psi, f, l, m](std::span<const long> q) {
    long norm = 0;
    for (long v : q) norm = std::max(norm, std::abs(v));
    if (norm == 0) return 0.0;
    return theta_value(f, l, m, psi(q), static_cast<double>(norm));
  };
}

PQRule theta_transform(const PQRule& psi, const DimensionFunction& f, int n, int m, bool decay_asserted) {
  if (n < 1 || m < 1) throw DomainError("n, m >= 1 required");
  if (!decay_asserted) throw HypothesisError("Psi(p,q)/|q| -> 0 as |q| -> infinity not asserted");
  const int l = m * (n - 1);
  require_g_valid(f, n * m, l);
  return [psi, f, l, m](std::span<const long> p, std::span<const long> q) {
    long norm = 0;
    for (long v : q) norm = std::max(norm, std::abs(v));
    if (norm == 0) return 0.0;
    return theta_value(f, l, m, psi(p, q), static_cast<double>(norm));
  };
}

std::string to_string(Setting s) {
  switch (s) {
    case Setting::KhintchineSim: return "KhintchineSim";
    case Setting::Jarnik: return "Jarnik";
    case Setting::KG: return "KG";
    case Setting::KGHausdorff: return "KGHausdorff";
    case Setting::InhomKGHausdorff: return "InhomKGHausdorff";
    case Setting::CantorLSV: return "CantorLSV";
  }
  return "KhintchineSim";
}

Setting setting_from_string(const std::string& name) {
  for (auto s : {Setting::KhintchineSim, Setting::Jarnik, Setting::KG, Setting::KGHausdorff,
                 Setting::InhomKGHausdorff, Setting::CantorLSV})
    if (to_string(s) == name) return s;
  throw DomainError("unknown setting: " + name);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ZeroMeasure: return "ZeroMeasure";
    case Verdict::FullMeasure: return "FullMeasure";
    case Verdict::HypothesesNotMet: return "HypothesesNotMet";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict verdict_from_string(const std::string& name) {
  for (auto v : {Verdict::ZeroMeasure, Verdict::FullMeasure, Verdict::HypothesesNotMet, Verdict::Inconclusive})
    if (to_string(v) == name) return v;
  throw DomainError("unknown verdict: " + name);
}

DichotomyResult dichotomy_verdict(const DichotomyRequest& req) {
  DichotomyResult result;
  const auto fail = [&](std::string reason) {
    result.verdict = Verdict::HypothesesNotMet;
    result.failed_hypothesis = std::move(reason);
    return result;
  };
  const auto need_f = [&]() -> const DimensionFunction& {
    if (!req.f) throw DomainError(to_string(req.setting) + " needs a dimension function f");
    return *req.f;
  };
  const int n = req.n;
  const int m = req.m;
  if (n < 1 || m < 1 || req.k < 1) throw DomainError("n, m, k >= 1 required");

  SeriesRequest sr;
  sr.psi = req.psi;
  sr.f = req.f;
  sr.k = req.k;
  sr.n = n;
  sr.m = m;
  // Divergence needs monotone psi in these cases; empty means no requirement.
  std::string monotone_reason;
  const bool inhom = req.y_present || req.setting == Setting::InhomKGHausdorff;

  switch (req.setting) {
    case Setting::KhintchineSim:
      sr.kind = SeriesKind::KhintchineSim;
      monotone_reason = "ψ monotone required";
      break;
    case Setting::Jarnik: {
      sr.kind = SeriesKind::Jarnik;
      if (!validate_hypotheses(need_f(), req.k, 0).scaled_monotone)
        return fail("r^-" + std::to_string(req.k) + " f(r) monotone required");
      monotone_reason = "ψ monotone required";
      break;
    }
    case Setting::KG:
      sr.kind = SeriesKind::KG;
      if (inhom) {
        if (n <= 2) monotone_reason = "ψ monotone required, n=" + std::to_string(n);
      } else if (n * m <= 1) {
        return fail("nm > 1 required");
      }
      break;
    case Setting::KGHausdorff:
    case Setting::InhomKGHausdorff: {
      sr.kind = SeriesKind::KGHausdorff;
      if (!inhom && n * m <= 1) return fail("nm > 1 required");
      const HypothesisReport report = validate_hypotheses(need_f(), n * m, m * (n - 1));
      if (!report.g_valid) return fail(report.g_reason);
      if (!report.scaled_monotone) return fail("r^-" + std::to_string(n * m) + " f(r) monotone required");
      if (inhom && n <= 2) monotone_reason = "ψ monotone required, n=" + std::to_string(n);
      break;
    }
    case Setting::CantorLSV: {
      sr.kind = SeriesKind::CantorLSV;
      sr.base = req.base;
      if (!scaled_monotonicity(need_f(), std::log(2.0) / std::log(3.0)).first)
        return fail("r^-log2/log3 f(r) monotone required");
      break;
    }
  }

  SeriesSpec spec;
  try {
    spec = build_series(sr);
  } catch (const HypothesisError& e) {
    return fail(e.condition());
  }
  const SeriesVerdict sv = classify(spec);
  result.series = sv;
  switch (sv.cls) {
    case SeriesClass::Converges:
      result.verdict = Verdict::ZeroMeasure;
      break;
    case SeriesClass::Diverges:
      if (!monotone_reason.empty() && req.psi.monotonicity() != Monotonicity::NonIncreasing) {
        result.verdict = Verdict::HypothesesNotMet;
        result.failed_hypothesis = monotone_reason;
      } else {
        result.verdict = Verdict::FullMeasure;
      }
      break;
    case SeriesClass::Inconclusive:
      result.verdict = Verdict::Inconclusive;
      break;
  }
  return result;
}

}  // namespace limsup
