#include "rosl/solve.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rosl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

struct StallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_l(double l) {
  require(std::isfinite(l) && l < 0.0, "solve: l must be finite and < 0");
}

// basic in d = 1 enjoys the sharper d = 1 analysis; fold it into basic_1d.
Scheme effective_scheme(Scheme s, int d) {
  if (s == Scheme::basic && d == 1) return Scheme::basic_1d;
  return s;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::basic: return "basic";
    case Scheme::basic_1d: return "basic_1d";
    case Scheme::lipschitz_refined: return "lipschitz_refined";
    case Scheme::lipschitz_refined_1d: return "lipschitz_refined_1d";
    case Scheme::adaptive: return "adaptive";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "basic") return Scheme::basic;
  if (s == "basic_1d") return Scheme::basic_1d;
  if (s == "lipschitz_refined") return Scheme::lipschitz_refined;
  if (s == "lipschitz_refined_1d") return Scheme::lipschitz_refined_1d;
  if (s == "adaptive") return Scheme::adaptive;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::diverged: return "diverged";
  }
  return "?";
}

SolveStatus status_from_string(const std::string& s) {
  if (s == "converged") return SolveStatus::converged;
  if (s == "max_iter") return SolveStatus::max_iter;
  if (s == "diverged") return SolveStatus::diverged;
  throw std::invalid_argument("unknown solve status '" + s + "'");
}

namespace {

Vector defect_at(const Multimap& f, const Vector& y_bar, const Vector& x) {
  return y_bar - project(y_bar, f(x));
}

}  // namespace

StepResult step_basic(const Multimap& f, const Vector& y_bar, const Vector& x, double l) {
  check_l(l);
  Vector v = defect_at(f, y_bar, x);
  return {x + (1.0 / (2.0 * l)) * v, v};
}

StepResult step_lipschitz_refined(const Multimap& f, const Vector& y_bar, const Vector& x,
                                  double l, double L) {
  check_l(l);
  require(std::isfinite(L) && L > 0.0, "lipschitz_refined: L must be finite and > 0");
  require(L <= -std::sqrt(2.0) * l,
          "lipschitz_refined: requires L <= -sqrt(2)*l (constants incompatible)");
  require(f.dim() >= 2, "lipschitz_refined: requires dimension d >= 2");
  Vector v = defect_at(f, y_bar, x);
  return {x + (l / (L * L)) * v, v};
}

StepResult step_lipschitz_refined_1d(const Multimap& f, const Vector& y_bar, const Vector& x,
                                     double l, double L) {
  check_l(l);
  require(f.dim() == 1, "lipschitz_refined_1d: requires dimension d = 1");
  require(std::isfinite(L) && L > 0.0, "lipschitz_refined_1d: L must be finite and > 0");
  require(L <= -2.0 * l, "lipschitz_refined_1d: requires L <= -2l (constants incompatible)");
  Vector v = defect_at(f, y_bar, x);
  return {x + 0.5 * (1.0 / l - 1.0 / L) * v, v};
}

namespace {

// Core of the adaptive step, reusing an already computed defect vector.
std::pair<Vector, AdaptiveState> adaptive_advance(const Multimap& f, const Vector& y_bar,
                                                  const Vector& x, const Vector& v,
                                                  double defect_norm, AdaptiveState st,
                                                  const SolveConfig& cfg) {
  if (defect_norm == 0.0) return {x, st};
  double lambda = st.lambda;
  for (int tries = 0; tries <= cfg.max_backtracks; ++tries) {
    Vector x_trial = x + lambda * v;
    double trial_defect = distance(y_bar, f(x_trial));
    if (trial_defect <= cfg.accept_factor * defect_norm) {
      st.lambda = std::max(lambda * cfg.growth_factor, st.lambda0);
      return {x_trial, st};
    }
    lambda *= cfg.backtrack_factor;
  }
  throw StallError(
      "adaptive step stalled: no defect decrease after " +
      std::to_string(cfg.max_backtracks) +
      " halvings (the map may not be ROSL with negative l, or the tolerance floor was hit)");
}

AdaptiveState init_adaptive_state(const SolveConfig& cfg) {
  double lambda0 = cfg.lambda0.value_or(1.0 / (2.0 * cfg.l));
  require(std::isfinite(lambda0) && lambda0 < 0.0, "adaptive: lambda0 must be finite and < 0");
  return {lambda0, lambda0};
}

}  // namespace

AdaptiveStepResult step_adaptive(const Multimap& f, const Vector& y_bar, const Vector& x,
                                 AdaptiveState state, const SolveConfig& cfg) {
  Vector v = defect_at(f, y_bar, x);
  auto [x_next, st] = adaptive_advance(f, y_bar, x, v, v.norm(), state, cfg);
  return {std::move(x_next), std::move(v), st};
}

Certificate inclusion_certificate(const Multimap& f, const Vector& y_bar, const Vector& x,
                                  double l) {
  check_l(l);
  Vector v = defect_at(f, y_bar, x);
  Certificate c;
  c.inclusion_center = x + (1.0 / (2.0 * l)) * v;
  c.inclusion_radius = -v.norm() / (2.0 * l);
  return c;
}

double exclusion_radius(const Multimap& f, const Vector& y_bar, const Vector& x, double L) {
  require(std::isfinite(L) && L > 0.0, "exclusion_radius: L must be > 0");
  return distance(y_bar, f(x)) / L;
}

namespace {

struct RateInfo {
  double kappa = 0.0;       // defect contraction factor per step
  double step_scale = 0.0;  // |x_{n+1} - x_n| <= step_scale * |v_n|
};

RateInfo rate_info(Scheme scheme, double l, double L, int d) {
  check_l(l);
  require(std::isfinite(L) && L >= 0.0, "bounds: L must be finite and >= 0");
  switch (effective_scheme(scheme, d)) {
    case Scheme::basic: {
      require(L < -2.0 * l, "bounds: basic scheme requires L < -2l for d > 1");
      return {L / (-2.0 * l), -1.0 / (2.0 * l)};
    }
    case Scheme::basic_1d: {
      require(d == 1, "bounds: basic_1d requires d = 1");
      require(L < -4.0 * l, "bounds: basic scheme in d = 1 requires L < -4l");
      return {std::max(0.5, std::abs(1.0 + L / (2.0 * l))), -1.0 / (2.0 * l)};
    }
    case Scheme::lipschitz_refined: {
      require(d >= 2, "bounds: lipschitz_refined requires d >= 2");
      require(L > 0.0 && L <= -std::sqrt(2.0) * l,
              "bounds: lipschitz_refined requires 0 < L <= -sqrt(2)*l");
      return {std::sqrt(L * L - l * l) / L, -l / (L * L)};
    }
    case Scheme::lipschitz_refined_1d: {
      require(d == 1, "bounds: lipschitz_refined_1d requires d = 1");
      require(L > 0.0 && L <= -2.0 * l, "bounds: lipschitz_refined_1d requires 0 < L <= -2l");
      return {0.5 * std::abs(1.0 + L / l), 0.5 * (1.0 / L - 1.0 / l)};
    }
    case Scheme::adaptive:
      throw std::invalid_argument("bounds: no a-priori bounds for the adaptive scheme");
  }
  throw std::logic_error("bounds: unreachable");
}

}  // namespace

double scheme_rate(Scheme scheme, double l, double L, int d, double accept_factor) {
  if (scheme == Scheme::adaptive) return accept_factor;
  return rate_info(scheme, l, L, d).kappa;
}

BoundSchedule a_priori_bounds(double defect0, double l, double L, Scheme scheme, int d,
                              int n_max) {
  require(std::isfinite(defect0) && defect0 >= 0.0, "bounds: defect0 must be >= 0");
  require(n_max >= 1, "bounds: n_max must be >= 1");
  RateInfo r = rate_info(scheme, l, L, d);
  BoundSchedule out;
  out.to_set.reserve(n_max);
  out.to_limit.reserve(n_max);
  const double inv2l = -1.0 / (2.0 * l);
  double kpow = 1.0;  // kappa^(n-1)
  for (int n = 1; n <= n_max; ++n) {
    out.to_set.push_back(inv2l * kpow * defect0);
    kpow *= r.kappa;
    out.to_limit.push_back(r.step_scale * kpow / (1.0 - r.kappa) * defect0);
  }
  return out;
}

double distance_to_limit_bound(double defect0, double l, double L, Scheme scheme, int d, int n) {
  require(n >= 0, "bounds: n must be >= 0");
  RateInfo r = rate_info(scheme, l, L, d);
  return r.step_scale * std::pow(r.kappa, n) / (1.0 - r.kappa) * defect0;
}

IterationTrace solve(const Multimap& f, const Vector& y_bar, const Vector& x0,
                     const SolveConfig& cfg) {
  check_l(cfg.l);
  require(cfg.defect_tol > 0.0, "solve: defect_tol must be > 0");
  require(cfg.max_iter >= 1, "solve: max_iter must be >= 1");
  require(cfg.divergence_threshold > 0.0, "solve: divergence_threshold must be > 0");
  require(x0.dim() == f.dim(), "solve: x0 dimension must match the map");
  require(y_bar.dim() == f.dim(), "solve: y_bar dimension must match the map");
  require(x0.finite(), "solve: x0 must be finite");
  require(y_bar.finite(), "solve: y_bar must be finite");

  const double l = cfg.l;
  double L = std::numeric_limits<double>::quiet_NaN();
  if (cfg.L) {
    require(std::isfinite(*cfg.L) && *cfg.L >= 0.0, "solve: L must be finite and >= 0");
    L = *cfg.L;
  }
  // Scheme/constant compatibility up front; basic schemes run for any L and
  // report divergence instead.
  switch (cfg.scheme) {
    case Scheme::basic:
      break;
    case Scheme::basic_1d:
      require(f.dim() == 1, "solve: basic_1d requires a 1-dimensional map");
      break;
    case Scheme::lipschitz_refined:
      require(f.dim() >= 2, "solve: lipschitz_refined requires d >= 2");
      require(cfg.L.has_value(), "solve: lipschitz_refined requires L");
      require(L > 0.0 && L <= -std::sqrt(2.0) * l,
              "solve: lipschitz_refined requires 0 < L <= -sqrt(2)*l");
      break;
    case Scheme::lipschitz_refined_1d:
      require(f.dim() == 1, "solve: lipschitz_refined_1d requires a 1-dimensional map");
      require(cfg.L.has_value(), "solve: lipschitz_refined_1d requires L");
      require(L > 0.0 && L <= -2.0 * l, "solve: lipschitz_refined_1d requires 0 < L <= -2l");
      break;
    case Scheme::adaptive:
      break;
  }

  IterationTrace trace;
  AdaptiveState adaptive_state{};
  if (cfg.scheme == Scheme::adaptive) adaptive_state = init_adaptive_state(cfg);

  Vector x = x0;
  for (int n = 0;; ++n) {
    Vector v;
    double dn = 0.0;
    try {
      v = defect_at(f, y_bar, x);
      dn = v.norm();
    } catch (const std::exception& e) {
      trace.status = SolveStatus::diverged;
      trace.diagnostic = e.what();
      break;
    }

    Certificate cert;
    cert.inclusion_center = x + (1.0 / (2.0 * l)) * v;
    cert.inclusion_radius = -dn / (2.0 * l);
    if (cfg.L) cert.exclusion_radius = dn / L;
    trace.iterates.push_back(x);
    trace.defect_vectors.push_back(v);
    trace.defect_norms.push_back(dn);
    trace.certificates.push_back(std::move(cert));

    if (!std::isfinite(dn) || !x.finite()) {
      trace.status = SolveStatus::diverged;
      break;
    }
    if (dn <= cfg.defect_tol) {
      trace.status = SolveStatus::converged;
      trace.limit = x;
      break;
    }
    if (dn >= cfg.divergence_threshold) {
      trace.status = SolveStatus::diverged;
      break;
    }
    if (n >= cfg.max_iter) {
      trace.status = SolveStatus::max_iter;
      break;
    }

    try {
      switch (cfg.scheme) {
        case Scheme::basic:
        case Scheme::basic_1d:
          x += (1.0 / (2.0 * l)) * v;
          break;
        case Scheme::lipschitz_refined:
          x += (l / (L * L)) * v;
          break;
        case Scheme::lipschitz_refined_1d:
          x += 0.5 * (1.0 / l - 1.0 / L) * v;
          break;
        case Scheme::adaptive: {
          auto [x_next, st] = adaptive_advance(f, y_bar, x, v, dn, adaptive_state, cfg);
          x = std::move(x_next);
          adaptive_state = st;
          break;
        }
      }
    } catch (const std::exception& e) {
      trace.status = SolveStatus::diverged;
      trace.diagnostic = e.what();
      break;
    }
  }
  return trace;
}

namespace {

void put_g17(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  os << buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const char* what) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument(std::string("trace csv: bad number in column ") + what + ": '" +
                                s + "'");
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& os, const IterationTrace& trace, int d) {
  os << "n";
  for (int i = 1; i <= d; ++i) os << ",x_" << i;
  for (int i = 1; i <= d; ++i) os << ",v_" << i;
  os << ",defect";
  for (int i = 1; i <= d; ++i) os << ",cert_center_" << i;
  os << ",cert_radius,excl_radius,status\n";
  const size_t n = trace.iterates.size();
  for (size_t k = 0; k < n; ++k) {
    os << k;
    for (int i = 0; i < d; ++i) {
      os << ',';
      put_g17(os, trace.iterates[k][i]);
    }
    for (int i = 0; i < d; ++i) {
      os << ',';
      put_g17(os, trace.defect_vectors[k][i]);
    }
    os << ',';
    put_g17(os, trace.defect_norms[k]);
    for (int i = 0; i < d; ++i) {
      os << ',';
      put_g17(os, trace.certificates[k].inclusion_center[i]);
    }
    os << ',';
    put_g17(os, trace.certificates[k].inclusion_radius);
    os << ',';
    if (trace.certificates[k].exclusion_radius)
      put_g17(os, *trace.certificates[k].exclusion_radius);
    os << ',';
    if (k + 1 == n) os << to_string(trace.status);
    os << '\n';
  }
}

IterationTrace read_trace_csv(std::istream& is, int* d_out) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("trace csv: empty file");
  std::vector<std::string> header = split_csv_line(line);
  int d = 0;
  for (const std::string& h : header)
    if (h.rfind("x_", 0) == 0) ++d;
  if (d < 1 || header.size() != static_cast<size_t>(3 * d + 4 + d))
    throw std::invalid_argument("trace csv: unrecognized header");
  if (d_out) *d_out = d;

  IterationTrace trace;
  std::string status_text;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("trace csv: row with wrong column count");
    int c = 1;
    std::vector<double> x(d), v(d), cc(d);
    for (int i = 0; i < d; ++i) x[i] = parse_double(cells[c++], "x");
    for (int i = 0; i < d; ++i) v[i] = parse_double(cells[c++], "v");
    double defect = parse_double(cells[c++], "defect");
    for (int i = 0; i < d; ++i) cc[i] = parse_double(cells[c++], "cert_center");
    double radius = parse_double(cells[c++], "cert_radius");
    std::optional<double> excl;
    if (!cells[c].empty()) excl = parse_double(cells[c], "excl_radius");
    ++c;
    if (!cells[c].empty()) status_text = cells[c];
    trace.iterates.emplace_back(std::move(x));
    trace.defect_vectors.emplace_back(std::move(v));
    trace.defect_norms.push_back(defect);
    Certificate cert;
    cert.inclusion_center = Vector(std::move(cc));
    cert.inclusion_radius = radius;
    cert.exclusion_radius = excl;
    trace.certificates.push_back(std::move(cert));
  }
  if (trace.iterates.empty()) throw std::invalid_argument("trace csv: no iterate rows");
  if (status_text.empty()) throw std::invalid_argument("trace csv: missing status on final row");
  trace.status = status_from_string(status_text);
  if (trace.status == SolveStatus::converged) trace.limit = trace.iterates.back();
  return trace;
}

nlohmann::json to_json(const SolveConfig& cfg) {
  nlohmann::json j{{"scheme", to_string(cfg.scheme)},
                   {"l", cfg.l},
                   {"defect_tol", cfg.defect_tol},
                   {"max_iter", cfg.max_iter},
                   {"divergence_threshold", cfg.divergence_threshold},
                   {"accept_factor", cfg.accept_factor},
                   {"backtrack_factor", cfg.backtrack_factor},
                   {"growth_factor", cfg.growth_factor},
                   {"max_backtracks", cfg.max_backtracks}};
  if (cfg.L) j["L"] = *cfg.L;
  if (cfg.lambda0) j["lambda0"] = *cfg.lambda0;
  return j;
}

SolveConfig solve_config_from_json(const nlohmann::json& j) {
  SolveConfig cfg;
  if (j.contains("scheme")) cfg.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  if (j.contains("l")) cfg.l = j.at("l").get<double>();
  if (j.contains("L")) cfg.L = j.at("L").get<double>();
  if (j.contains("defect_tol")) cfg.defect_tol = j.at("defect_tol").get<double>();
  if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<int>();
  if (j.contains("divergence_threshold"))
    cfg.divergence_threshold = j.at("divergence_threshold").get<double>();
  if (j.contains("accept_factor")) cfg.accept_factor = j.at("accept_factor").get<double>();
  if (j.contains("backtrack_factor"))
    cfg.backtrack_factor = j.at("backtrack_factor").get<double>();
  if (j.contains("growth_factor")) cfg.growth_factor = j.at("growth_factor").get<double>();
  if (j.contains("max_backtracks")) cfg.max_backtracks = j.at("max_backtracks").get<int>();
  if (j.contains("lambda0")) cfg.lambda0 = j.at("lambda0").get<double>();
  return cfg;
}

}  // namespace rosl
