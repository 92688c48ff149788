#ifndef MOMENTKIT_DETERMINACY_HPP
#define MOMENTKIT_DETERMINACY_HPP

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "momentkit/hankel.hpp"
#include "momentkit/integrate.hpp"
#include "momentkit/orthopoly.hpp"

namespace momentkit {

// Krein string data: positive increments l_n, m_n whose interleaving
// c_{2j-1} = m_j, c_{2j} = l_j gives the Stieltjes continued-fraction
// coefficients. L = sum l_n and M = sum m_n are the Stieltjes determinacy
// limits: both finite iff the Stieltjes problem is indeterminate.
template <class T>
struct KreinParameters {
  std::vector<T> ell;        // ell[k] = l_{k+1}
  std::vector<T> m;          // m[k]   = m_{k+1}
  std::vector<T> c;          // c[k]   = c_{k+1} interleaved
  std::vector<T> L_partial;  // L_partial[k] = -Q_{k+1}(0)/P_{k+1}(0)
  std::vector<T> M_partial;  // M_partial[k] = sum_{j<=k} P_j(0)^2
};

template <class T>
KreinParameters<T> krein_parameters(const RecursionCoefficients<T>& rc, int N) {
  rc.require_index(N, "krein_parameters");
  auto ev = monic_eval(rc, T(0), N);
  KreinParameters<T> kp;
  for (int n = 1; n <= N; ++n) {
    if (ev.p[n].is_zero() || ev.p[n - 1].is_zero())
      raise(errc::not_stieltjes, "P_n(0) = 0: not a Stieltjes-positive problem");
    T ln = -ev.pi[n - 1] / (ev.p[n] * ev.p[n - 1]);
    T mn = ev.p[n - 1] * ev.p[n - 1] / ev.pi[n - 1];
    if (!(ln > T(0)) || !(mn > T(0)))
      raise(errc::not_stieltjes, "nonpositive string increment at n = " +
                                     std::to_string(n));
    kp.ell.push_back(ln);
    kp.m.push_back(mn);
    kp.c.push_back(mn);
    kp.c.push_back(ln);
    kp.L_partial.push_back(-ev.q[n] / ev.p[n]);
    T mp = n == 1 ? mn : kp.M_partial.back() + mn;
    kp.M_partial.push_back(mp);
  }

  // inverse relations: a_n^2 l_{n+1}^2 m_{n+1} m_{n+2} = 1 and
  // b_n = (1/m_{n+1}) (1/l_n + 1/l_{n+1}), b_0 = 1/(m_1 l_1)
  auto check = [&](const T& lhs, const T& rhs, const char* what) {
    if constexpr (is_exact_v<T>) {
      if (!(lhs == rhs))
        raise(errc::cross_check_failure, std::string("string relation ") + what);
    } else {
      BigFloat scale = abs_value(rhs) + BigFloat(1);
      if (abs_value(lhs - rhs) >
          scale * identity_tolerance(BigFloat::context_precision()))
        raise(errc::cross_check_failure,
              std::string("string relation ") + what + " beyond tolerance");
    }
  };
  for (int n = 0; n + 2 <= N; ++n)
    check(rc.a2[n] * kp.ell[n] * kp.ell[n] * kp.m[n] * kp.m[n + 1], T(1),
          "a_n = 1/(l_{n+1} sqrt(m_{n+1} m_{n+2}))");
  check(rc.b[0] * kp.m[0] * kp.ell[0], T(1), "b_0 = 1/(m_1 l_1)");
  for (int n = 1; n + 1 <= N; ++n)
    check(rc.b[n], (T(1) / kp.ell[n - 1] + T(1) / kp.ell[n]) / kp.m[n],
          "b_n = (1/l_n + 1/l_{n+1})/m_{n+1}");
  return kp;
}

// Least-squares fit of partial sums against c1 + c2 g(N) for g in
// {log N, sqrt N}; the trend is declared divergent when the best-fit slope
// dominates the fit residual by a factor of 10.
struct TrendFit {
  enum class Model { log_n, sqrt_n } model = Model::log_n;
  BigFloat c1, c2, residual;
  bool divergent = false;
};

inline TrendFit fit_trend(const std::vector<BigFloat>& partials) {
  TrendFit best;
  bool first = true;
  int n = static_cast<int>(partials.size());
  if (n < 4) return best;
  for (auto model : {TrendFit::Model::log_n, TrendFit::Model::sqrt_n}) {
    BigFloat sx(0), sy(0), sxx(0), sxy(0);
    for (int i = 0; i < n; ++i) {
      BigFloat x = model == TrendFit::Model::log_n
                       ? BigFloat(static_cast<long>(i + 1)).log()
                       : BigFloat(static_cast<long>(i + 1)).sqrt();
      const BigFloat& y = partials[i];
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    BigFloat nn(static_cast<long>(n));
    BigFloat denom = nn * sxx - sx * sx;
    BigFloat c2 = (nn * sxy - sx * sy) / denom;
    BigFloat c1 = (sy - c2 * sx) / nn;
    BigFloat ss(0);
    for (int i = 0; i < n; ++i) {
      BigFloat x = model == TrendFit::Model::log_n
                       ? BigFloat(static_cast<long>(i + 1)).log()
                       : BigFloat(static_cast<long>(i + 1)).sqrt();
      BigFloat r = partials[i] - (c1 + c2 * x);
      ss += r * r;
    }
    BigFloat res = (ss / nn).sqrt();
    if (first || res < best.residual) {
      best.model = model;
      best.c1 = c1;
      best.c2 = c2;
      best.residual = res;
      first = false;
    }
  }
  BigFloat floor = BigFloat::pow2(-64) * (partials.back().abs() + BigFloat(1));
  BigFloat res = best.residual > floor ? best.residual : floor;
  best.divergent = best.c2 > BigFloat(10) * res;
  return best;
}

// Carleman partial sums sum gamma_{2n}^{-1/(2n)} (Hamburger) and
// sum gamma_n^{-1/(2n)} (Stieltjes), with the divergence-trend heuristic.
// Divergence of either sum certifies determinacy; convergence proves
// nothing, hence the fit is only a "trend".
struct CarlemanReport {
  std::vector<BigFloat> hamburger_partials;
  std::vector<BigFloat> stieltjes_partials;  // empty unless applicable
  TrendFit hamburger_trend;
  TrendFit stieltjes_trend;
  bool stieltjes_applicable = false;
};

template <class T>
CarlemanReport carleman(const MomentSequence<T>& seq, int N) {
  if (seq.max_index() < 2) raise(errc::too_short, "carleman needs gamma_2");
  CarlemanReport rep;
  BigFloat acc(0);
  for (int n = 1; 2 * n <= seq.max_index() && n <= N; ++n) {
    BigFloat g(seq[2 * n]);
    if (!(g > BigFloat(0))) break;
    acc += pow(g, BigFloat(-1) / BigFloat(2 * n));
    rep.hamburger_partials.push_back(acc);
  }
  rep.hamburger_trend = fit_trend(rep.hamburger_partials);
  if (seq.kind == Kind::stieltjes) {
    rep.stieltjes_applicable = true;
    BigFloat acc2(0);
    for (int n = 1; n <= seq.max_index() && n <= N; ++n) {
      BigFloat g(seq[n]);
      if (!(g > BigFloat(0))) {
        rep.stieltjes_applicable = false;
        break;
      }
      acc2 += pow(g, BigFloat(-1) / BigFloat(2 * n));
      rep.stieltjes_partials.push_back(acc2);
    }
    rep.stieltjes_trend = fit_trend(rep.stieltjes_partials);
  }
  return rep;
}

// Monotone partial sums L_N = -Q_N(0)/P_N(0) and M_N = sum_{j<N} P_j(0)^2.
template <class T>
std::pair<std::vector<T>, std::vector<T>> stieltjes_LM(
    const RecursionCoefficients<T>& rc, int N) {
  auto kp = krein_parameters(rc, N);
  return {kp.L_partial, kp.M_partial};
}

// Density input for the Krein integral test.
struct ExpPowDensity {
  BigFloat alpha;  // F(x) = exp(-|x|^alpha)
};
struct TableDensity {
  std::vector<std::pair<BigFloat, BigFloat>> points;  // (x, F(x)), x grid
};
using Density = std::variant<ExpPowDensity, TableDensity>;

enum class TailVerdict { convergent, divergent, unknown };

struct KreinDensityReport {
  BigFloat integral;
  TailVerdict tail = TailVerdict::unknown;
  bool indeterminate_flag = false;  // set when tail converges
  std::vector<std::string> warnings;
};

// Quadrature of -ln F(x)/(1+x^2) (whole line) or of the half-line kernel
// -ln F(x)/((1+x) sqrt x) up to the cutoff X, with a log-log tail-exponent
// fit. A convergent tail certifies indeterminacy of the density's moment
// problem (assuming 0 <= F <= 1 and finite moments).
inline KreinDensityReport krein_density_test(const Density& density,
                                             bool half_line, const BigFloat& X,
                                             const BigFloat& tol) {
  KreinDensityReport rep;
  rep.integral = BigFloat(0);

  auto check_F = [&](const BigFloat& f) {
    if (f < BigFloat(0) || f > BigFloat(1))
      raise(errc::invalid_density, "density values must lie in [0, 1]");
  };

  if (std::holds_alternative<ExpPowDensity>(density)) {
    BigFloat alpha = std::get<ExpPowDensity>(density).alpha;
    if (!(alpha > BigFloat(0)))
      raise(errc::invalid_density, "exp_pow needs alpha > 0");
    // -ln F = |x|^alpha exactly; no sampling needed
    if (!half_line) {
      auto integrand = [&](const BigFloat& x) {
        if (x.is_zero()) return BigFloat(0);
        return pow(x, alpha) / (BigFloat(1) + x * x);
      };
      rep.integral = BigFloat(2) * quad_tanh_sinh(integrand, BigFloat(0), X, tol);
      // tail exponent of x^alpha / x^2
      BigFloat slope = alpha - BigFloat(2);
      rep.tail = slope < BigFloat(-1.05) ? TailVerdict::convergent
                 : slope > BigFloat(-0.95) ? TailVerdict::divergent
                                           : TailVerdict::unknown;
    } else {
      // substitute x = u^2: integral of 2 u^{2 alpha} / (1 + u^2) du
      BigFloat U = X.sqrt();
      auto integrand = [&](const BigFloat& u) {
        if (u.is_zero()) return BigFloat(0);
        return BigFloat(2) * pow(u, BigFloat(2) * alpha) / (BigFloat(1) + u * u);
      };
      rep.integral = quad_tanh_sinh(integrand, BigFloat(0), U, tol);
      // tail exponent of x^alpha / ((1+x) sqrt x) ~ x^{alpha - 3/2}
      BigFloat slope = alpha - BigFloat(1.5);
      rep.tail = slope < BigFloat(-1.05) ? TailVerdict::convergent
                 : slope > BigFloat(-0.95) ? TailVerdict::divergent
                                           : TailVerdict::unknown;
    }
  } else {
    const auto& pts = std::get<TableDensity>(density).points;
    if (pts.size() < 2) raise(errc::invalid_density, "table needs >= 2 points");
    bool all_one = true;
    BigFloat acc(0);
    std::vector<std::pair<BigFloat, BigFloat>> kern;  // (x, integrand)
    for (const auto& [x, F] : pts) {
      check_F(F);
      if (F != BigFloat(1)) all_one = false;
      if (x > X) break;
      BigFloat val;
      if (F.is_zero()) {
        raise(errc::invalid_density, "F = 0 sampled: -ln F diverges");
      }
      BigFloat mln = -F.log();
      if (!half_line) {
        val = mln / (BigFloat(1) + x * x);
      } else {
        if (!(x > BigFloat(0))) continue;  // half-line kernel singular at 0
        val = mln / ((BigFloat(1) + x) * x.sqrt());
      }
      kern.emplace_back(x, val);
    }
    for (size_t i = 1; i < kern.size(); ++i)
      acc += (kern[i].first - kern[i - 1].first) *
             (kern[i].second + kern[i - 1].second) / BigFloat(2);
    rep.integral = acc;
    if (all_one)
      rep.warnings.push_back(
          "F == 1 everywhere: not a probability density context");
    // log-log slope from the last table points
    if (kern.size() >= 3 && kern.back().second > BigFloat(0) &&
        kern[kern.size() - 3].second > BigFloat(0)) {
      BigFloat s = (kern.back().second.log() - kern[kern.size() - 3].second.log()) /
                   (kern.back().first.log() - kern[kern.size() - 3].first.log());
      rep.tail = s < BigFloat(-1.05) ? TailVerdict::convergent
                 : s > BigFloat(-0.95) ? TailVerdict::divergent
                                       : TailVerdict::unknown;
    } else if (all_one) {
      rep.tail = TailVerdict::convergent;
    }
  }
  rep.indeterminate_flag = rep.tail == TailVerdict::convergent;
  return rep;
}

enum class DeterminacyVerdict {
  hamburger_determinate,
  stieltjes_determinate_hamburger_indeterminate,
  indeterminate,
  inconclusive,
};

inline const char* determinacy_verdict_name(DeterminacyVerdict v) {
  switch (v) {
    case DeterminacyVerdict::hamburger_determinate:
      return "hamburger_determinate";
    case DeterminacyVerdict::stieltjes_determinate_hamburger_indeterminate:
      return "stieltjes_determinate_hamburger_indeterminate";
    case DeterminacyVerdict::indeterminate:
      return "indeterminate";
    case DeterminacyVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct DeterminacyReport {
  CarlemanReport carleman;
  std::vector<BigFloat> L_partials;
  std::vector<BigFloat> M_partials;
  DeterminacyVerdict verdict = DeterminacyVerdict::inconclusive;
  std::vector<std::string> evidence;
  int depth = 0;
  long precision = 0;
};

namespace detail {

// "numerically Cauchy": max increment over the last quarter of the range
// is below 1e-4 of the current value.
inline bool numerically_cauchy(const std::vector<BigFloat>& partials) {
  int n = static_cast<int>(partials.size());
  if (n < 8) return false;
  int start = n - n / 4;
  BigFloat worst(0);
  for (int i = start; i < n; ++i) {
    BigFloat inc = (partials[i] - partials[i - 1]).abs();
    if (inc > worst) worst = inc;
  }
  return worst < BigFloat(1e-4) * partials.back().abs();
}

}  // namespace detail

// Numerical determinacy classifier. The paper's criteria are limit
// statements; at finite depth this reports evidence, never proof, and says
// "inconclusive" when the trends do not speak.
inline DeterminacyReport classify(const MomentSequence<BigFloat>& seq, int depth,
                                  long precision) {
  ScopedPrecision guard(precision);
  DeterminacyReport rep;
  rep.depth = depth;
  rep.precision = precision;

  auto existence = existence_check(seq);
  if (existence.first_h_failure) {
    if (!existence.low_confidence)
      raise(errc::degenerate_sequence,
            "Hankel determinant failure at index " +
                std::to_string(*existence.first_h_failure));
    // determinants are not trustworthy here; confirm through the stable
    // recurrence norms before giving up
    int nd = std::min(*existence.first_h_failure, (seq.max_index() + 1) / 2);
    if (nd >= 1) recursion_coeffs(seq, nd);  // raises DegenerateSequence if so
  }
  if (existence.low_confidence)
    rep.evidence.push_back(
        "hankel determinants low-confidence at this precision; relying on "
        "the recurrence-based checks");

  rep.carleman = carleman(seq, depth);
  bool carleman_determinate =
      rep.carleman.hamburger_trend.divergent ||
      (rep.carleman.stieltjes_applicable && rep.carleman.stieltjes_trend.divergent);
  if (rep.carleman.hamburger_trend.divergent)
    rep.evidence.push_back("carleman hamburger partial sums trend divergent");
  if (rep.carleman.stieltjes_applicable && rep.carleman.stieltjes_trend.divergent)
    rep.evidence.push_back("carleman stieltjes partial sums trend divergent");

  bool l_cauchy = false, m_cauchy = false, have_lm = false;
  if (seq.kind == Kind::stieltjes &&
      (existence.verdict == HankelVerdict::stieltjes_ok ||
       existence.low_confidence)) {
    int nc = std::min(depth, (seq.max_index() + 1) / 2);
    if (nc >= 2) {
      try {
        auto rc = recursion_coeffs(seq, nc);
        auto [L, M] = stieltjes_LM(rc, nc);  // raises when not stieltjes
        rep.L_partials = L;
        rep.M_partials = M;
        have_lm = true;
        l_cauchy = detail::numerically_cauchy(L);
        m_cauchy = detail::numerically_cauchy(M);
        rep.evidence.push_back(std::string("L partials numerically ") +
                               (l_cauchy ? "cauchy" : "not cauchy"));
        rep.evidence.push_back(std::string("M partials numerically ") +
                               (m_cauchy ? "cauchy" : "not cauchy"));
      } catch (const Error& e) {
        if (e.code() != errc::not_stieltjes) throw;
        rep.evidence.push_back("stieltjes claim refuted by P_n(0) signs");
      }
    }
  }

  if (carleman_determinate) {
    rep.verdict = DeterminacyVerdict::hamburger_determinate;
  } else if (have_lm && l_cauchy && m_cauchy) {
    rep.verdict = DeterminacyVerdict::indeterminate;
  } else if (have_lm && m_cauchy && !l_cauchy) {
    rep.verdict = DeterminacyVerdict::stieltjes_determinate_hamburger_indeterminate;
  } else {
    rep.verdict = DeterminacyVerdict::inconclusive;
    rep.evidence.push_back("no criterion fired at this depth/precision");
  }
  return rep;
}

}  // namespace momentkit

#endif  // MOMENTKIT_DETERMINACY_HPP
