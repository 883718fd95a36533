#include "limsup/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "limsup/errors.hpp"
#include "limsup/fit.hpp"
#include "limsup/formulas.hpp"
#include "limsup/kernels.hpp"
#include "limsup/number_theory.hpp"

namespace limsup {

namespace {

constexpr double kExponentTol = 1e-9;
const double kCantorExponent = std::log(2.0) / std::log(3.0);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PsiPiece {
  IndexFamily family;
  bool complement;
  double tau;
};

// psi as q^{-tau} on pieces of N; empty for sampled psi.
std::vector<PsiPiece> psi_pieces(const ApproxFunction& psi) {
  if (const auto* p = std::get_if<PowerApprox>(&psi.form())) return {{IndexFamily::all_naturals(), false, p->tau}};
  if (const auto* p = std::get_if<PiecewisePower>(&psi.form())) {
    if (p->alpha == p->beta) return {{IndexFamily::all_naturals(), false, p->alpha}};
    return {{p->on_set, false, p->alpha}, {p->on_set, true, p->beta}};
  }
  return {};
}

// f(r) with r -> 0 limits; NaN outside a sampled table.
double f_at(const DimensionFunction& f, double r) {
  if (!(r > 0.0)) return 0.0;
  try {
    return f(r);
  } catch (const RangeError&) {
    return kNaN;
  }
}

double psi_at(const ApproxFunction& psi, std::uint64_t q) {
  try {
    return psi(q);
  } catch (const RangeError&) {
    return kNaN;
  }
}

// Exponent pair of f(q^{-x}) = q^{-x s} (x log q)^b; the log factor is clamped away
// once q^{-x} no longer tends to 0.
std::pair<double, double> f_of_power(const PowerLog& f, double x) {
  return {-x * f.s, x > 0.0 ? f.b : 0.0};
}

const DimensionFunction& need_f(const SeriesRequest& r) {
  if (!r.f) throw DomainError(to_string(r.kind) + " series needs a dimension function f");
  return *r.f;
}

const ApproxFunction& need_psi(const SeriesRequest& r) {
  if (!r.psi) throw DomainError(to_string(r.kind) + " series needs an approximating function psi");
  return *r.psi;
}

bool integral_test_diverges(double e, double b, bool* used_log) {
  if (used_log) *used_log = false;
  if (e > -1.0 + kExponentTol) return true;
  if (e < -1.0 - kExponentTol) return false;
  if (used_log) *used_log = b != 0.0;
  return b >= -1.0 - kExponentTol;
}

// Weights of sigma_1..sigma_k inside Phi^t.
std::vector<double> svf_weights(std::size_t k, double t) {
  std::vector<double> w(k, 0.0);
  const double kk = static_cast<double>(k);
  if (t >= kk) {
    std::fill(w.begin(), w.end(), t / kk);
    return w;
  }
  const auto n = static_cast<std::size_t>(std::floor(t)) + 1;
  for (std::size_t j = 0; j + 1 < n; ++j) w[j] = 1.0;
  w[n - 1] = t - static_cast<double>(n - 1);
  return w;
}

std::vector<SeriesComponent> symbolic_components(const SeriesRequest& r) {
  std::vector<SeriesComponent> out;
  const auto add = [&](IndexFamily fam, bool comp, double e, double b) {
    out.push_back({std::move(fam), comp, e, b});
  };
  const auto pieces = r.psi ? psi_pieces(*r.psi) : std::vector<PsiPiece>{};
  const PowerLog* f = r.f ? r.f->power_log_form() : nullptr;

  switch (r.kind) {
    case SeriesKind::KhintchineSim:
      for (const auto& p : pieces) add(p.family, p.complement, -r.k * p.tau, 0.0);
      break;
    case SeriesKind::KG:
      for (const auto& p : pieces) add(p.family, p.complement, (r.n - 1) - r.m * p.tau, 0.0);
      break;
    case SeriesKind::Jarnik:
      if (!f) break;
      for (const auto& p : pieces) {
        const auto [e, b] = f_of_power(*f, p.tau + 1.0);
        add(p.family, p.complement, r.k + e, b);
      }
      break;
    case SeriesKind::KGHausdorff: {
      if (!f) break;
      const PowerLog g{f->s - r.m * (r.n - 1), f->b};
      for (const auto& p : pieces) {
        const auto [e, b] = f_of_power(g, p.tau + 1.0);
        add(p.family, p.complement, (r.n + r.m - 1) + e, b);
      }
      break;
    }
    case SeriesKind::CantorLSV: {
      if (!f) break;
      const bool all = std::holds_alternative<AllNaturals>(r.base.form());
      if (pieces.size() == 1) {
        const auto [e, b] = f_of_power(*f, pieces[0].tau);
        add(r.base, false, kCantorExponent + e, b);
      } else if (pieces.size() == 2 && all) {
        for (const auto& p : pieces) {
          const auto [e, b] = f_of_power(*f, p.tau);
          add(p.family, p.complement, kCantorExponent + e, b);
        }
      }
      break;
    }
    case SeriesKind::PowerLogTerm:
      add(r.base, false, r.term_exponent, r.term_log_exponent);
      break;
    case SeriesKind::PowerRadii:
      if (const auto* p = std::get_if<PowerDecay>(&r.radii->form()))
        add(IndexFamily::all_naturals(), false, -p->p * r.s, 0.0);
      else if (const auto* g = std::get_if<GeometricDecay>(&r.radii->form()))
        // ratio^{is} summed over i is q^{s log(ratio)/log 2} summed over q = 2^i.
        add(IndexFamily::geometric(2), false, r.s * std::log(g->ratio) / std::numbers::ln2, 0.0);
      break;
    case SeriesKind::SVFSum: {
      if (!std::all_of(r.sigma.begin(), r.sigma.end(), [](const RadiiRule& x) { return x.is_symbolic(); }))
        break;
      const auto w = svf_weights(r.sigma.size(), r.t);
      double geo = 0.0;
      double poly = 0.0;
      for (std::size_t j = 0; j < r.sigma.size(); ++j) {
        if (const auto* p = std::get_if<PowerDecay>(&r.sigma[j].form()))
          poly += w[j] * p->p;
        else
          geo += w[j] * std::log(std::get<GeometricDecay>(r.sigma[j].form()).ratio);
      }
      if (geo < 0.0)
        add(IndexFamily::geometric(2), false, geo / std::numbers::ln2, 0.0);
      else
        add(IndexFamily::all_naturals(), false, -poly, 0.0);
      break;
    }
    case SeriesKind::DuffinSchaeffer:
      break;
  }
  return out;
}

std::function<double(std::uint64_t)> make_term(const SeriesRequest& r, std::uint64_t n_hint) {
  switch (r.kind) {
    case SeriesKind::KhintchineSim: {
      const ApproxFunction psi = need_psi(r);
      const int k = r.k;
      return [psi, k](std::uint64_t q) { return std::pow(psi_at(psi, q), k); };
    }
    case SeriesKind::KG: {
      const ApproxFunction psi = need_psi(r);
      const int n = r.n, m = r.m;
      return [psi, n, m](std::uint64_t q) {
        return std::pow(static_cast<double>(q), n - 1) * std::pow(psi_at(psi, q), m);
      };
    }
    case SeriesKind::Jarnik: {
      const ApproxFunction psi = need_psi(r);
      const DimensionFunction f = need_f(r);
      const int k = r.k;
      return [psi, f, k](std::uint64_t q) {
        const double x = static_cast<double>(q);
        return std::pow(x, k) * f_at(f, psi_at(psi, q) / x);
      };
    }
    case SeriesKind::KGHausdorff: {
      const ApproxFunction psi = need_psi(r);
      const DimensionFunction f = need_f(r);
      const int n = r.n, m = r.m;
      const double l = m * (n - 1);
      return [psi, f, n, m, l](std::uint64_t q) {
        const double x = static_cast<double>(q);
        const double rad = psi_at(psi, q) / x;
        const double g = rad > 0.0 ? std::pow(rad, -l) * f_at(f, rad) : 0.0;
        return std::pow(x, n + m - 1) * g;
      };
    }
    case SeriesKind::DuffinSchaeffer: {
      const ApproxFunction psi = need_psi(r);
      const DimensionFunction f = need_f(r);
      const int k = r.k;
      const std::uint64_t cap = std::min<std::uint64_t>(std::min(n_hint, psi.max_index()), kTotientSieveCap);
      auto phi = std::make_shared<const std::vector<std::uint32_t>>(totient_table(cap));
      return [psi, f, k, phi](std::uint64_t q) {
        const double t = q < phi->size() ? (*phi)[q] : static_cast<double>(totient(q));
        const double x = static_cast<double>(q);
        return std::pow(t, k) * f_at(f, psi_at(psi, q) / x);
      };
    }
    case SeriesKind::CantorLSV: {
      const ApproxFunction psi = need_psi(r);
      const DimensionFunction f = need_f(r);
      const IndexFamily base = r.base;
      return [psi, f, base](std::uint64_t q) {
        if (!base.contains(q)) return 0.0;
        return f_at(f, psi_at(psi, q)) * std::pow(static_cast<double>(q), kCantorExponent);
      };
    }
    case SeriesKind::PowerLogTerm: {
      const IndexFamily base = r.base;
      const double e = r.term_exponent, b = r.term_log_exponent;
      return [base, e, b](std::uint64_t q) {
        if (!base.contains(q)) return 0.0;
        const double x = static_cast<double>(q);
        return std::pow(x, e) * (b == 0.0 ? 1.0 : std::pow(std::max(std::log(x), 1.0), b));
      };
    }
    case SeriesKind::PowerRadii: {
      const RadiiRule radii = *r.radii;
      const double s = r.s;
      return [radii, s](std::uint64_t i) {
        if (i > radii.max_index()) return kNaN;
        return std::pow(radii(i), s);
      };
    }
    case SeriesKind::SVFSum: {
      const std::vector<RadiiRule> sigma = r.sigma;
      const double t = r.t;
      return [sigma, t](std::uint64_t i) {
        std::vector<double> values;
        values.reserve(sigma.size());
        for (const auto& rule : sigma) {
          if (i > rule.max_index()) return kNaN;
          values.push_back(rule(i));
        }
        std::sort(values.rbegin(), values.rend());
        return singular_value_fn(values, t);
      };
    }
  }
  return [](std::uint64_t) { return kNaN; };
}

}  // namespace

std::string to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::KhintchineSim: return "KhintchineSim";
    case SeriesKind::Jarnik: return "Jarnik";
    case SeriesKind::KG: return "KG";
    case SeriesKind::KGHausdorff: return "KGHausdorff";
    case SeriesKind::DuffinSchaeffer: return "DuffinSchaeffer";
    case SeriesKind::CantorLSV: return "CantorLSV";
    case SeriesKind::PowerRadii: return "PowerRadii";
    case SeriesKind::SVFSum: return "SVFSum";
    case SeriesKind::PowerLogTerm: return "PowerLogTerm";
  }
  return "KhintchineSim";
}

SeriesKind series_kind_from_string(const std::string& name) {
  for (auto kind : {SeriesKind::KhintchineSim, SeriesKind::Jarnik, SeriesKind::KG, SeriesKind::KGHausdorff,
                    SeriesKind::DuffinSchaeffer, SeriesKind::CantorLSV, SeriesKind::PowerRadii,
                    SeriesKind::SVFSum, SeriesKind::PowerLogTerm})
    if (to_string(kind) == name) return kind;
  throw DomainError("unknown series kind: " + name);
}

std::string to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::Converges: return "Converges";
    case SeriesClass::Diverges: return "Diverges";
    case SeriesClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(SeriesMethod m) {
  switch (m) {
    case SeriesMethod::ExactExponent: return "ExactExponent";
    case SeriesMethod::IntegralTestLog: return "IntegralTestLog";
    case SeriesMethod::NumericDiagnostic: return "NumericDiagnostic";
  }
  return "NumericDiagnostic";
}

SeriesClass series_class_from_string(const std::string& name) {
  for (auto c : {SeriesClass::Converges, SeriesClass::Diverges, SeriesClass::Inconclusive})
    if (to_string(c) == name) return c;
  throw DomainError("unknown series class: " + name);
}

SeriesMethod series_method_from_string(const std::string& name) {
  for (auto m : {SeriesMethod::ExactExponent, SeriesMethod::IntegralTestLog, SeriesMethod::NumericDiagnostic})
    if (to_string(m) == name) return m;
  throw DomainError("unknown series method: " + name);
}

SeriesSpec build_series(const SeriesRequest& request) {
  const SeriesRequest& r = request;
  if (r.k < 1 || r.n < 1 || r.m < 1) throw DomainError("series parameters need k, n, m >= 1");
  switch (r.kind) {
    case SeriesKind::PowerRadii:
      if (!r.radii) throw DomainError("PowerRadii series needs a radii rule");
      break;
    case SeriesKind::SVFSum:
      if (r.sigma.empty()) throw DomainError("SVFSum series needs singular value rules");
      if (!(r.t >= 0.0)) throw DomainError("SVFSum series needs t >= 0");
      break;
    case SeriesKind::PowerLogTerm:
      break;
    case SeriesKind::KhintchineSim:
    case SeriesKind::KG:
      need_psi(r);
      break;
    default:
      need_psi(r);
      need_f(r);
      break;
  }
  if (r.kind == SeriesKind::KGHausdorff) {
    const int l = r.m * (r.n - 1);
    const HypothesisReport report = validate_hypotheses(*r.f, r.n * r.m, l);
    if (!report.g_valid) throw HypothesisError(report.g_reason);
  }

  SeriesSpec spec;
  spec.request = r;
  spec.support = (r.kind == SeriesKind::CantorLSV || r.kind == SeriesKind::PowerLogTerm)
                     ? r.base
                     : IndexFamily::all_naturals();
  spec.components = symbolic_components(r);
  if (r.psi) spec.max_index = std::min(spec.max_index, r.psi->max_index());
  if (r.radii) spec.max_index = std::min(spec.max_index, r.radii->max_index());
  for (const auto& rule : r.sigma) spec.max_index = std::min(spec.max_index, rule.max_index());
  spec.term = make_term(r, std::min(spec.max_index, kNumericSeriesCutoff));
  return spec;
}

SeriesClass classify_component(const SeriesComponent& c, SeriesMethod* method) {
  bool used_log = false;
  SeriesClass verdict = SeriesClass::Converges;
  const bool natural = c.complement ? !c.family.is_cofinite() : c.family.is_cofinite();
  const bool empty_like = c.complement ? (c.family.is_cofinite()) : c.family.is_finite();
  if (empty_like) {
    // Finite support: a finite sum.
    verdict = SeriesClass::Converges;
  } else if (natural) {
    verdict = integral_test_diverges(c.exponent, c.log_exponent, &used_log) ? SeriesClass::Diverges
                                                                            : SeriesClass::Converges;
  } else if (const auto* poly = std::get_if<PolynomialCeil>(&c.family.form())) {
    // ceil(k^p)^E (log ceil(k^p))^B = k^{pE} (p log k)^B Theta(1).
    verdict = integral_test_diverges(poly->exponent * c.exponent, c.log_exponent, &used_log)
                  ? SeriesClass::Diverges
                  : SeriesClass::Converges;
  } else {
    // Geometric base b: terms b^{nE} (n log b)^B.
    if (c.exponent > kExponentTol) {
      verdict = SeriesClass::Diverges;
    } else if (c.exponent < -kExponentTol) {
      verdict = SeriesClass::Converges;
    } else {
      used_log = c.log_exponent != 0.0;
      verdict = c.log_exponent >= -1.0 - kExponentTol ? SeriesClass::Diverges : SeriesClass::Converges;
    }
  }
  if (method) *method = used_log ? SeriesMethod::IntegralTestLog : SeriesMethod::ExactExponent;
  return verdict;
}

SeriesDiagnostics partial_sum_diagnostics(const SeriesSpec& series, std::uint64_t n) {
  if (n < 100) throw DomainError("partial sum diagnostics need N >= 100");
  n = std::min(n, series.max_index);
  SeriesDiagnostics diag;
  std::vector<std::uint64_t> edges{1};
  while (edges.back() * 2 <= n + 1) edges.push_back(edges.back() * 2);
  if (edges.back() < n + 1) edges.push_back(n + 1);
  const std::vector<double> blocks = kernels::omp::block_sums(series.term, edges);

  double running = 0.0;
  std::vector<double> dyadic_log_c;
  std::vector<double> dyadic_log_sum;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (std::isnan(blocks[b])) break;
    if (std::isinf(blocks[b])) diag.saturated = true;
    running += blocks[b];
    diag.n_max = edges[b + 1] - 1;
    diag.partial_sums.push_back({diag.n_max, running});
    const bool dyadic = edges[b + 1] == 2 * edges[b];
    if (dyadic && edges[b] >= 4 && blocks[b] > 0.0 && std::isfinite(blocks[b])) {
      dyadic_log_c.push_back(std::log(static_cast<double>(edges[b])));
      dyadic_log_sum.push_back(std::log(blocks[b]));
    }
  }
  // Keep the last 12 dyadic blocks.
  if (dyadic_log_c.size() > 12) {
    const auto drop = static_cast<std::ptrdiff_t>(dyadic_log_c.size() - 12);
    dyadic_log_c.erase(dyadic_log_c.begin(), dyadic_log_c.begin() + drop);
    dyadic_log_sum.erase(dyadic_log_sum.begin(), dyadic_log_sum.begin() + drop);
  }
  diag.fitted_exponent = kNaN;
  diag.tail_slope = kNaN;
  if (dyadic_log_c.size() >= 3) diag.tail_slope = fit_line(dyadic_log_c, dyadic_log_sum).slope;
  if (dyadic_log_c.size() >= 4) {
    std::vector<double> loglog(dyadic_log_c.size());
    std::transform(dyadic_log_c.begin(), dyadic_log_c.end(), loglog.begin(), [](double v) { return std::log(v); });
    diag.fitted_exponent = fit_plane(dyadic_log_c, loglog, dyadic_log_sum)[1] - 1.0;
  }
  return diag;
}

SeriesVerdict classify_numeric(const SeriesSpec& series, std::uint64_t n) {
  SeriesVerdict verdict;
  verdict.method = SeriesMethod::NumericDiagnostic;
  SeriesDiagnostics diag = partial_sum_diagnostics(series, std::max<std::uint64_t>(n, 100));
  const bool all_zero = !diag.partial_sums.empty() && diag.partial_sums.back().sum == 0.0;
  if (diag.saturated) {
    verdict.cls = SeriesClass::Diverges;
  } else if (all_zero && diag.n_max >= 100) {
    verdict.cls = SeriesClass::Converges;
  } else if (std::isnan(diag.fitted_exponent)) {
    verdict.cls = SeriesClass::Inconclusive;
  } else {
    const double gap = diag.fitted_exponent + 1.0;
    verdict.exponent = diag.fitted_exponent;
    if (gap > kInconclusiveBand)
      verdict.cls = SeriesClass::Diverges;
    else if (gap < -kInconclusiveBand)
      verdict.cls = SeriesClass::Converges;
    else
      verdict.cls = SeriesClass::Inconclusive;
  }
  verdict.diagnostics = std::move(diag);
  return verdict;
}

SeriesVerdict classify(const SeriesSpec& series) {
  if (!series.is_symbolic()) return classify_numeric(series);
  SeriesVerdict verdict;
  verdict.cls = SeriesClass::Converges;
  const SeriesComponent* reported = nullptr;
  SeriesMethod reported_method = SeriesMethod::ExactExponent;
  for (const auto& c : series.components) {
    SeriesMethod method;
    const SeriesClass cls = classify_component(c, &method);
    if (cls == SeriesClass::Diverges) {
      verdict.cls = SeriesClass::Diverges;
      reported = &c;
      reported_method = method;
      break;
    }
    if (!reported || c.exponent > reported->exponent) {
      reported = &c;
      reported_method = method;
    }
  }
  verdict.method = reported_method;
  verdict.exponent = reported->exponent;
  verdict.log_exponent = reported->log_exponent;
  return verdict;
}

ConvergenceExponent exponent_of_convergence(const IndexFamily& family) {
  return std::visit(
      [](const auto& form) -> ConvergenceExponent {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, AllNaturals>) return {1.0, true, 0.0};
        else if constexpr (std::is_same_v<T, GeometricPowers>) return {0.0, true, 0.0};
        else if constexpr (std::is_same_v<T, PolynomialCeil>) return {std::min(1.0, 1.0 / form.exponent), true, 0.0};
        else return {0.0, true, 0.0};
      },
      family.form());
}

ConvergenceExponent exponent_of_convergence(const RadiiRule& radii) {
  if (const auto* p = std::get_if<PowerDecay>(&radii.form())) return {1.0 / p->p, true, 0.0};
  if (std::holds_alternative<GeometricDecay>(radii.form())) return {0.0, true, 0.0};
  const auto& values = std::get<SampledSequence>(radii.form()).values;
  const std::size_t n = values.size();
  if (n < 8) throw DomainError("sampled radii need at least 8 values for an exponent estimate");
  // Fit log r_i against log i over the top decade, log-spaced.
  std::vector<double> x;
  std::vector<double> y;
  const double lo = std::max(1.0, static_cast<double>(n) / 10.0);
  const double hi = static_cast<double>(n);
  std::uint64_t last = 0;
  for (int j = 0; j < 256; ++j) {
    const auto i = static_cast<std::uint64_t>(std::llround(lo * std::pow(hi / lo, j / 255.0)));
    if (i == last || i < 1 || i > n) continue;
    last = i;
    x.push_back(std::log(static_cast<double>(i)));
    y.push_back(std::log(values[i - 1]));
  }
  if (x.size() < 3) throw DomainError("sampled radii span too few indices");
  const LineFit fit = fit_line(x, y);
  const double p = -fit.slope;
  if (!(p > 0.0)) return {std::numeric_limits<double>::infinity(), false, std::numeric_limits<double>::infinity()};
  return {1.0 / p, false, fit.slope_half_width / (p * p)};
}

}  // namespace limsup
