#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperholo/bgmetric.hpp"
#include "hyperholo/dynkin.hpp"
#include "hyperholo/ghspace.hpp"
#include "hyperholo/hkquotient.hpp"
#include "hyperholo/report.hpp"
#include "hyperholo/sampling.hpp"
#include "hyperholo/twistor.hpp"

namespace hyperholo {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"flat", "bg", "gh", "quotient", "twistor", "dynkin", "all"};
  return names;
}

struct RunConfig {
  std::string suite = "all";
  std::optional<double> tol;  // replaces every per-check tolerance
  double h = 1e-3;
  int order = 4;
  std::optional<int> samples;  // default: per-suite
  std::uint64_t seed = 1;
  std::vector<double> centers{0.0, 1.0};
  double c = 0.0;  // GH lift constant; quotient level when positive
  int n = 2;       // quaternionic dimension for flat and twistor
  std::string diagram = "A5";
  std::vector<int> k, l;  // flat circle weights; empty runs (0,1) and (1,1)
  int contour_nodes = 64;
  std::string out;  // JSON report path
  std::string csv;  // profile path

  void validate() const {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) throw ConfigError("unknown suite '" + suite + "'");
    if (tol && !(*tol >= 0.0 && std::isfinite(*tol))) throw ConfigError("--tol must be a finite non-negative number");
    if (!(h > 0.0 && h < 0.1)) throw ConfigError("--h must lie in (0, 0.1)");
    if (order != 2 && order != 4) throw ConfigError("--order must be 2 or 4");
    if (samples && *samples < 1) throw ConfigError("--samples must be positive");
    if (centers.empty()) throw ConfigError("--centers: at least one centre is required");
    try {
      GHConfig{centers, c, 1.0, {}}.validate();
    } catch (const ModelError& e) {
      throw ConfigError(std::string("--centers: ") + e.what());
    }
    if (!std::isfinite(c)) throw ConfigError("--c must be finite");
    if (n < 1 || n > 4) throw ConfigError("--n must be between 1 and 4");
    try {
      parse_diagram(diagram);
    } catch (const ModelError& e) {
      throw ConfigError(std::string("--diagram: ") + e.what());
    }
    if (k.size() != l.size()) throw ConfigError("weights k and l must have the same length");
    if (!k.empty()) {
      if (static_cast<int>(k.size()) != n) throw ConfigError("weights must have n entries");
      try {
        CircleActionSpec spec(k, l);
        if (spec.trivial() || spec.degree() == 0) throw ConfigError("weights must have nonzero rotation degree");
      } catch (const ModelError& e) {
        throw ConfigError(std::string("weights: ") + e.what());
      }
    }
    if (contour_nodes < 8) throw ConfigError("contour nodes must be at least 8");
  }

  FDScheme fd() const { return {h, order, false}; }
  FDScheme fine() const { return {h / 10.0, order, false}; }
  int samples_or(int fallback) const { return samples ? *samples : fallback; }
};

namespace suite_detail {

inline std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

inline double tau() { return 2.0 * std::numbers::pi; }

inline Vec gh_sample3(Rng& rng, const GHConfig& cfg) {
  for (;;) {
    Vec x(3);
    x << random_uniform(rng, cfg.centers.front() - 1.5, cfg.centers.back() + 1.5), random_uniform(rng, -1.5, 1.5),
        random_uniform(rng, -1.5, 1.5);
    if (gh_clearance(cfg)(x) > 0.2) return x;
  }
}

inline Vec gh_sample4(Rng& rng, const GHConfig& cfg) {
  Vec p(4);
  p.head(3) = gh_sample3(rng, cfg);
  p(3) = random_uniform(rng, 0.0, tau());
  return p;
}

inline Vec bg_sample(Rng& rng, double zr, double pr) {
  return CP1Model::point(cplx(random_uniform(rng, -zr, zr), random_uniform(rng, -zr, zr)),
                         cplx(random_uniform(rng, -pr, pr), random_uniform(rng, -pr, pr)));
}

inline CVec random_cvec(Rng& rng, int n, double r = 1.0) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(random_uniform(rng, -r, r), random_uniform(rng, -r, r));
  return v;
}

inline cplx random_zeta(Rng& rng) { return std::polar(random_uniform(rng, 0.5, 2.0), random_uniform(rng, 0.0, tau())); }

inline LevelSetPoint eh_point(const EguchiHansonFixture& eh, double c, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    try {
      return solve_level(eh.action, Vec::Constant(1, c), random_point(rng, 8, 1.0));
    } catch (const NonFreePointError&) {
    }
  }
  throw ConvergenceError("no free seed found on the level set");
}

// sum dx^dy - du^dv in the packed coordinates
inline Form flat_reference(const FlatModel& m) {
  Form F(4 * m.n(), 2);
  for (int i = 0; i < m.n(); ++i) {
    F.set_component({m.zre(i), m.zim(i)}, 1.0);
    F.set_component({m.wre(i), m.wim(i)}, -1.0);
  }
  return F;
}

inline std::vector<double> quotient_levels(const RunConfig& cfg) {
  return cfg.c > 0.0 ? std::vector<double>{cfg.c, 2.0 * cfg.c} : std::vector<double>{1.0, 2.0};
}

// Fitted Eguchi-Hanson centres at one level, with the samples used.
struct LevelFit {
  std::vector<GHPoint> points;
  GHFit fit;
};

inline LevelFit eh_fit(double c, std::uint64_t seed, int count = 40) {
  EguchiHansonFixture eh;
  const Mat C = eh.residual.generator();
  const int d = ineffective_order(eh.action, C);
  Rng rng(seed);
  LevelFit out;
  while (static_cast<int>(out.points.size()) < count) {
    auto q = quotient_sample(eh.action, eh_point(eh, c, rng));
    try {
      out.points.push_back(gh_coordinates(eh.action, C, d, q));
    } catch (const NonFreePointError&) {
    }
  }
  out.fit = fit_gh_centers(out.points, 2);
  return out;
}

}  // namespace suite_detail

inline void flat_suite(const RunConfig& cfg, Report& rep) {
  using namespace suite_detail;
  const FlatModel m(cfg.n);
  const FDScheme s = cfg.fd();
  const int N = cfg.samples_or(100);

  struct Case {
    std::string tag;
    CircleActionSpec spec;
    std::optional<double> closed_form;  // F = value * (dx^dy - du^dv) for uniform weights
  };
  std::vector<Case> cases;
  if (cfg.k.empty()) {
    cases.push_back({"w01", CircleActionSpec::uniform(cfg.n, 0, 1), 1.0});
    cases.push_back({"w11", CircleActionSpec::uniform(cfg.n, 1, 1), 0.0});
  } else {
    cases.push_back({"custom", CircleActionSpec(cfg.k, cfg.l), std::nullopt});
  }

  for (const auto& cs : cases) {
    const std::string p = "flat." + cs.tag + ".";
    Rng rng(cfg.seed);
    std::vector<Vec> pts;
    for (int t = 0; t < N; ++t) pts.push_back(random_point(rng, 4 * cfg.n));
    const auto& spec = cs.spec;

    run_check(rep, p + "type11", "omega_1 + (1/n) dd^c mu is of type (1,1) for I, J and K", 1e-8, [&] {
      double worst = 0.0;
      for (const auto& x : pts) {
        const Form F = hyperholo_curvature(m, spec, x, s);
        for (const auto& S : m.structures()) worst = std::max(worst, type11_residual(F, ComplexStructure(S)));
      }
      return worst;
    });
    run_check(rep, p + "moment", "d mu = i_X omega_1", 1e-9, [&] {
      double worst = 0.0;
      for (const auto& x : pts) worst = std::max(worst, moment_residual(m, spec, x, s));
      return worst;
    });
    run_check(rep, p + "killing", "X is Killing and preserves omega_1", 1e-10, [&] {
      auto [g, w] = killing_residual(m, spec);
      return std::max(g, w);
    });
    run_check(rep, p + "rotation_degree", "R_theta^*(omega_2 + i omega_3) = e^{i n theta}(omega_2 + i omega_3)", 1e-12,
              [&] { return rotation_degree_check(m, spec); });
    run_check(rep, p + "closed", "dF = 0", 1e-6, [&] {
      const FDScheme coarse{1e-2, 2, false};
      FormField Ff{[&](const Vec& q) { return hyperholo_curvature(m, spec, q, coarse); }, {}, 4 * cfg.n, 2};
      double worst = 0.0;
      for (std::size_t t = 0; t < std::min<std::size_t>(5, pts.size()); ++t)
        worst = std::max(worst, ext_deriv(Ff, pts[t], coarse).max_abs());
      return worst;
    });
    if (cs.closed_form) {
      const double a = *cs.closed_form;
      run_check(rep, p + "closed_form", "F equals ((l - k)/n)(dx^dy - du^dv) for uniform weights", 1e-8, [&] {
        const Form ref = a * flat_reference(m);
        double worst = 0.0;
        for (const auto& x : pts) worst = std::max(worst, (hyperholo_curvature(m, spec, x, s) - ref).max_abs());
        return worst;
      });
    }
  }

  if (cfg.k.empty()) {
    const auto full = CircleActionSpec::uniform(cfg.n, 1, 1);
    Rng rng(cfg.seed + 1);
    std::vector<Vec> pts;
    for (int t = 0; t < N; ++t) pts.push_back(random_point(rng, 4 * cfg.n));
    run_check(rep, "flat.full_rotation.trivial", "full rotation: omega_1 + (1/2) dd^c mu vanishes identically", 1e-9, [&] {
      double worst = 0.0;
      for (const auto& x : pts) worst = std::max(worst, hyperholo_curvature(m, full, x, s).max_abs());
      return worst;
    });
    run_check(rep, "flat.full_rotation.literal_coefficient",
              "full rotation with coefficient n = 2 in front of dd^c mu gives -3 omega_1 (not zero)", 1e-8, [&] {
                const Form w1 = m.kahler_triple()[0];
                double worst = 0.0, size = 0.0;
                for (const auto& x : pts) {
                  const Form F = hyperholo_curvature(m, full, x, s, CurvatureCoefficient::literal_degree);
                  worst = std::max(worst, (F + 3.0 * w1).max_abs());
                  size = std::max(size, F.max_abs());
                }
                return Measurement(worst, size);
              });
  }
}

inline void bg_suite(const RunConfig& cfg, Report& rep) {
  using namespace suite_detail;
  const CP1Model m;
  const FDScheme s = cfg.fd();
  const int N = cfg.samples_or(50);

  run_check(rep, "bg.fu_identity", "(u f(u))' = (sqrt(1+u) - 1)/(2u) on 200 log-spaced u in [1e-3, 10]", 1e-7,
            [] { return fu_identity_residual(log_grid(1e-3, 10.0, 200)); });

  Rng rng(cfg.seed);
  std::vector<Vec> pts;
  for (int t = 0; t < N; ++t) pts.push_back(bg_sample(rng, 1.0, 1.0));

  run_check(rep, "bg.moment.scaling", "mu(v) = d/dlambda h(v/lambda) at lambda = 1", 1e-7, [&] {
    double worst = 0.0;
    for (const auto& q : pts) worst = std::max(worst, std::abs(bg_moment_map(m, q) - moment_from_scaling(m, q)));
    return worst;
  });
  run_check(rep, "bg.moment.dc", "mu = -i_X d^c h", 1e-6, [&] {
    double worst = 0.0;
    for (const auto& q : pts) worst = std::max(worst, std::abs(bg_moment_map(m, q) - moment_from_dc(m, q, s)));
    return worst;
  });
  run_check(rep, "bg.moment.defining", "d mu = i_X omega_1", 1e-7, [&] {
    double worst = 0.0;
    for (std::size_t t = 0; t < std::min<std::size_t>(10, pts.size()); ++t) {
      const Form dmu = ext_deriv(mu_field(m), pts[t], s);
      worst = std::max(worst, (dmu - interior(m.fibre_rotation(pts[t]), bg_omega1(m, pts[t], s))).max_abs());
    }
    return worst;
  });
  run_check(rep, "bg.curvature.agree", "omega_1 + dd^c mu = p^*omega + dd^c k", 1e-5, [&] {
    double worst = 0.0;
    for (const auto& q : pts) worst = std::max(worst, (bg_curvature(m, q, s) - bg_curvature_via_moment(m, q, s)).max_abs());
    return worst;
  });
  run_check(rep, "bg.curvature.zero_section", "F restricts to the base form on the zero section", 1e-8, [&] {
    double worst = 0.0;
    for (const auto& q : pts) {
      const Vec q0 = scale_fibre(q, 0.0);
      worst = std::max(worst, std::abs(bg_curvature(m, q0, s).component({0, 1}) - m.base_form(q0).component({0, 1})));
    }
    return worst;
  });

  Rng near(cfg.seed + 1);
  std::vector<BGHyperkahlerResiduals> hk;
  std::string hk_error;
  for (int t = 0; t < cfg.samples_or(30); ++t) {
    try {
      hk.push_back(bg_hyperkahler_check(m, bg_sample(near, 1.0, 0.5), s));
    } catch (const std::exception& e) {
      hk_error = e.what();
      break;
    }
  }
  auto hk_check = [&](const std::string& id, const std::string& anchor, auto pick) {
    run_check(rep, id, anchor, 1e-6, [&] {
      if (!hk_error.empty()) throw std::runtime_error(hk_error);
      double worst = 0.0;
      for (const auto& r : hk) worst = std::max(worst, pick(r));
      return worst;
    });
  };
  hk_check("bg.hyperkahler.j_square", "J^2 = -Id near the zero section", [](const BGHyperkahlerResiduals& r) { return r.j_square; });
  hk_check("bg.hyperkahler.type11_I", "F is of type (1,1) for I", [](const BGHyperkahlerResiduals& r) { return r.type11[0]; });
  hk_check("bg.hyperkahler.type11_J", "F is of type (1,1) for J", [](const BGHyperkahlerResiduals& r) { return r.type11[1]; });
  hk_check("bg.hyperkahler.type11_K", "F is of type (1,1) for K", [](const BGHyperkahlerResiduals& r) { return r.type11[2]; });
}

/// Check ids carry `prefix` so two centre configurations can share one report.
inline void gh_suite(const RunConfig& cfg, Report& rep, const std::string& prefix = "gh.") {
  using namespace suite_detail;
  const GHConfig g{cfg.centers, cfg.c, 1.0, {}};
  g.validate();
  const FDScheme s = cfg.fd(), fine = cfg.fine();
  const int N = cfg.samples_or(100);

  Rng rng(cfg.seed);
  std::vector<Vec> x3, x4;
  for (int t = 0; t < N; ++t) x3.push_back(gh_sample3(rng, g));
  for (int t = 0; t < N; ++t) x4.push_back(gh_sample4(rng, g));
  const auto star3 = [](const Form& w) { return hodge_star(Metric::euclidean(3), 1, w); };

  run_check(rep, prefix + "potential.harmonic", "Laplacian of V vanishes", 1e-6, [&] {
    double worst = 0.0;
    for (const auto& x : x3) worst = std::max(worst, std::abs(laplacian(gh_potential_field(g), x, s)));
    return worst;
  });
  run_check(rep, prefix + "alpha.bianchi", "d alpha = *dV", 1e-6, [&] {
    double worst = 0.0;
    for (const auto& x : x3)
      worst = std::max(worst, (ext_deriv(gh_alpha_field(g), x, s) - star3(ext_deriv(gh_potential_field(g), x, s))).max_abs());
    return worst;
  });
  run_check(rep, prefix + "monopole.harmonic", "Laplacian of phi vanishes", 1e-6, [&] {
    double worst = 0.0;
    for (const auto& x : x3) worst = std::max(worst, std::abs(laplacian(monopole_phi_field(g), x, s)));
    return worst;
  });
  run_check(rep, prefix + "monopole.bianchi", "dA = *d phi", 1e-6, [&] {
    double worst = 0.0;
    for (const auto& x : x3)
      worst = std::max(worst, (ext_deriv(monopole_A_field(g), x, s) - star3(ext_deriv(monopole_phi_field(g), x, s))).max_abs());
    return worst;
  });
  run_check(rep, prefix + "lift.differential", "df = -((x2 V_2 + x3 V_3) dx1 - x2 V_1 dx2 - x3 V_1 dx3)", 1e-6, [&] {
    double worst = 0.0;
    for (const auto& x : x3) worst = std::max(worst, (ext_deriv(rotation_lift_field(g), x, s) + lift_df_reference(g, x)).max_abs());
    return worst;
  });
  run_check(rep, prefix + "ahat.asd", "*dA-hat = -dA-hat", 1e-5, [&] {
    double worst = 0.0;
    for (const auto& p : x4) worst = std::max(worst, asd_residual(g, p, fine));
    return worst;
  });
  run_check(rep, prefix + "ahat.interior_Y", "i_Y dA-hat = d(phi/V)", 1e-5, [&] {
    double worst = 0.0;
    for (const auto& p : x4) worst = std::max(worst, interior_Y_residual(g, p, fine));
    return worst;
  });
  for (int i = 0; i + 1 < g.count(); ++i) {
    const double expect = tau() * (g.centers[static_cast<std::size_t>(i) + 1] - g.centers[static_cast<std::size_t>(i)]);
    run_check(rep, prefix + "period." + std::to_string(i), "integral of omega_1 over the sphere above segment " + std::to_string(i) +
                  " equals 2 pi (a_{i+1} - a_i), relative error", 1e-6, [&] {
      const double P = sphere_period(g, i);
      return Measurement(std::abs(P - expect) / expect, P);
    });
  }
  run_check(rep, prefix + "lift.segment_constant",
            "f is exactly constant on each open axis segment, equal to (#centres left) - (#centres right) + c", 0.0, [&] {
              const auto segs = axis_segment_values(g);
              double worst = 0.0;
              for (std::size_t k = 0; k < segs.size(); ++k) {
                const double expect = double(k) - double(g.count() - static_cast<int>(k)) + g.c;
                for (double v : segs[k]) worst = std::max(worst, std::abs(v - expect));
              }
              return worst;
            });
  if (g.count() % 2 == 0 && g.c == 0.0) {
    run_check(rep, prefix + "lift.middle_zero", "even number of centres and c = 0: f = 0 on the middle segment", 0.0, [&] {
      const auto segs = axis_segment_values(g);
      double worst = 0.0;
      for (double v : segs[static_cast<std::size_t>(g.count() / 2)]) worst = std::max(worst, std::abs(v));
      return worst;
    });
  }
}

inline void quotient_suite(const RunConfig& cfg, Report& rep) {
  using namespace suite_detail;
  const EguchiHansonFixture eh;
  const FDScheme fine = cfg.fine();
  const int N = cfg.samples_or(30);
  const auto levels = quotient_levels(cfg);
  std::vector<double> separations;

  for (std::size_t li = 0; li < levels.size(); ++li) {
    const double c = levels[li];
    const std::string p = "quotient.c" + num(c) + ".";
    const Vec cv = Vec::Constant(1, c);
    Rng rng(cfg.seed + li);
    std::vector<LevelSetPoint> pts;
    std::string seed_error;
    try {
      for (int t = 0; t < N; ++t) pts.push_back(eh_point(eh, c, rng));
    } catch (const std::exception& e) {
      seed_error = e.what();
    }
    auto guard = [&] {
      if (!seed_error.empty()) throw std::runtime_error(seed_error);
    };

    run_check(rep, p + "level", "points solve nu = (c, 0, 0)", 1e-10, [&] {
      guard();
      double worst = 0.0;
      for (const auto& q : pts) {
        Mat nu = hk_moment(eh.action, q.m);
        nu(0, 0) -= c;
        worst = std::max(worst, nu.cwiseAbs().maxCoeff());
      }
      return worst;
    });
    run_check(rep, p + "algebra", "descended I, J, K satisfy S_i^2 = -1 and IJ = K", 1e-8, [&] {
      guard();
      double worst = 0.0;
      for (const auto& q : pts) {
        const auto qs = quotient_sample(eh.action, q);
        for (const auto& S : qs.S) worst = std::max(worst, ComplexStructure::defect(S));
        worst = std::max(worst, (qs.S[0] * qs.S[1] - qs.S[2]).cwiseAbs().maxCoeff());
      }
      return worst;
    });
    run_check(rep, p + "character", "-(1/n)<B m, A m> equals the canonical character c", 1e-12, [&] {
      guard();
      double worst = 0.0;
      const double chi = canonical_character(cv).chi(0);
      for (const auto& q : pts)
        worst = std::max(worst, std::abs(-(eh.rotator.generator() * q.m).dot(eh.action.gen(0) * q.m) / eh.rotator.degree() - chi));
      return worst;
    });

    // curvature and its type, computed once per sample
    std::vector<Form> F, Fchi;
    std::vector<std::array<double, 3>> type11;
    std::string curv_error = seed_error;
    if (curv_error.empty()) {
      try {
        const Vec chi = canonical_character(cv).chi;
        for (const auto& q : pts) {
          LocalSection sec(eh.action, q);
          const Vec t0 = Vec::Zero(sec.dim());
          F.push_back(quotient_rotator_curvature(sec, eh.rotator, t0, fine));
          Fchi.push_back(canonical_bundle_curvature(sec, chi, t0, fine));
          const Metric g(quotient_metric(sec, t0));
          std::array<double, 3> r{};
          for (int i = 0; i < 3; ++i)
            r[static_cast<std::size_t>(i)] = type11_residual(F.back(), ComplexStructure(quotient_structure(sec, t0, i), 1e-8), g);
          type11.push_back(r);
        }
      } catch (const std::exception& e) {
        curv_error = e.what();
      }
    }
    run_check(rep, p + "curvature_match",
              "curvature of the canonical connection on the level set times_G C equals omega-bar_1 + (1/n) dd^c mu-bar", 1e-5, [&] {
                if (!curv_error.empty()) throw std::runtime_error(curv_error);
                double worst = 0.0;
                for (std::size_t t = 0; t < F.size(); ++t) worst = std::max(worst, (F[t] - Fchi[t]).max_abs());
                return worst;
              });
    const char* names[3] = {"I", "J", "K"};
    for (int i = 0; i < 3; ++i) {
      run_check(rep, p + "type11_" + names[i], std::string("quotient curvature is of type (1,1) for the descended ") + names[i], 1e-5,
                [&] {
                  if (!curv_error.empty()) throw std::runtime_error(curv_error);
                  double worst = 0.0;
                  for (const auto& r : type11) worst = std::max(worst, r[static_cast<std::size_t>(i)]);
                  return worst;
                });
    }
    run_check(rep, p + "gh_fit", "(x, V) samples fit V = 1/|x - a_1| + 1/|x - a_2|; value is |a_2 - a_1|", 1e-5, [&] {
      const auto lf = eh_fit(c, cfg.seed + 100 + li);
      if (lf.fit.centers.size() != 2) throw ConvergenceError("fit did not return two centres");
      const double sep = (lf.fit.centers[1] - lf.fit.centers[0]).norm();
      separations.push_back(sep);
      return Measurement(lf.fit.residual, sep);
    });
  }
  run_check(rep, "quotient.gh_scaling", "fitted centre separation is linear in the level, relative error", 1e-4, [&] {
    if (separations.size() != 2) throw std::runtime_error("GH fit failed at one of the levels");
    const double want = levels[1] / levels[0];
    return Measurement(std::abs(separations[1] / separations[0] - want) / want, separations[1] / separations[0]);
  });
}

inline void twistor_suite(const RunConfig& cfg, Report& rep) {
  using namespace suite_detail;
  const int n = cfg.n;
  const FlatModel m(n);
  const FDScheme s = cfg.fd();
  const int N = cfg.samples_or(100);
  const MeroConnection conn{n, 1};
  Rng rng(cfg.seed);

  auto random_q = [&](Rng& r) { return pack_q(random_cvec(r, n), random_cvec(r, n), random_zeta(r)); };
  std::vector<CVec> qs, tangents;
  for (int t = 0; t < N; ++t) {
    qs.push_back(random_q(rng));
    tangents.push_back(random_cvec(rng, 2 * n + 1));
  }
  struct Smooth {
    CVec z, w;
    cplx zeta;
  };
  std::vector<Smooth> sm;
  for (int t = 0; t < N; ++t) sm.push_back({random_cvec(rng, n), random_cvec(rng, n), random_zeta(rng)});

  run_check(rep, "twistor.transition.cocycle", "g_UV g_VU = 1 on the overlap", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& q : qs) {
      const auto p = unpack_U(q);
      worst = std::max(worst, std::abs(transition_gUV(p) * transition_gVU(to_V(p)) - 1.0));
    }
    return worst;
  });
  run_check(rep, "twistor.transition.holomorphic", "g_UV satisfies the Cauchy-Riemann equations", 1e-10, [&] {
    double worst = 0.0;
    for (std::size_t t = 0; t < std::min<std::size_t>(20, qs.size()); ++t) worst = std::max(worst, cauchy_riemann_residual(qs[t], s));
    return worst;
  });
  run_check(rep, "twistor.connection.glue", "A_V - A_U = -d(v.xi / 2 zeta), with A_V = -(1/2 zeta~) sum xi~ dv~", 1e-12, [&] {
    double worst = 0.0;
    for (std::size_t t = 0; t < qs.size(); ++t) worst = std::max(worst, connection_pair_residual(qs[t], tangents[t]));
    return worst;
  });
  run_check(rep, "twistor.curvature.numeric", "F_Z from the closed form matches finite differences of A_U", 1e-9, [&] {
    double worst = 0.0;
    for (std::size_t t = 0; t < std::min<std::size_t>(10, qs.size()); ++t)
      worst = std::max(worst, (conn.dA(qs[t]) - dA_numeric(conn, qs[t], s)).cwiseAbs().maxCoeff());
    return worst;
  });
  run_check(rep, "twistor.curvature.closed", "dF_Z = 0", 1e-9, [&] {
    double worst = 0.0;
    for (std::size_t t = 0; t < std::min<std::size_t>(10, qs.size()); ++t) worst = std::max(worst, curvature_closedness(conn, qs[t], s));
    return worst;
  });
  run_check(rep, "twistor.action.interior", "i_V F_Z = 0 for the lifted circle action", 1e-10, [&] {
    double worst = 0.0;
    for (const auto& x : sm) worst = std::max(worst, interior_action_residual(conn, pack_q(smooth_to_U(x.z, x.w, x.zeta))));
    return worst;
  });
  run_check(rep, "twistor.action.transport", "the lifted action field agrees with the transported rotation", 1e-10, [&] {
    double worst = 0.0;
    for (std::size_t t = 0; t < std::min<std::size_t>(20, sm.size()); ++t) {
      const auto& x = sm[t];
      const CVec V = action_field(pack_q(smooth_to_U(x.z, x.w, x.zeta)));
      worst = std::max(worst, (transported_action_field(x.z, x.w, x.zeta, s) - V).cwiseAbs().maxCoeff());
    }
    return worst;
  });
  run_check(rep, "twistor.fibre_restriction", "F_Z restricted to a fibre is (omega_2 + i omega_3)/2i at zeta, fibre scale -1/2", 1e-10, [&] {
    double worst = 0.0;
    for (const auto& x : sm) worst = std::max(worst, fibre_restriction_residual(conn, m, x.z, x.w, x.zeta));
    return worst;
  });
  for (int k : {1, 2, -3}) {
    const MeroConnection ck{n, k};
    Rng r2(cfg.seed + 10 + static_cast<std::uint64_t>(k + 3));
    const CVec v = random_cvec(r2, n), xi = random_cvec(r2, n);
    run_check(rep, "twistor.residue.value_k" + std::to_string(k), "residue of the dzeta coefficient of A_U at zeta = 0 equals 2 pi i k", 1e-10, [&] {
      const cplx res = residue_value(ck, v, xi, 1e-2, cfg.contour_nodes);
      return Measurement(std::abs(res - cplx(0.0, tau() * k)), res.imag());
    });
    run_check(rep, "twistor.residue.form_k" + std::to_string(k), "residue form equals i_X(omega_2 + i omega_3)/2i", 1e-10,
              [&] { return residue_form_residual(ck, m, v, xi, 1e-2, cfg.contour_nodes); });
  }
  run_check(rep, "twistor.poles", "A_U and A_V have at most simple poles at zeta = 0 and infinity", 0.0, [&] {
    Rng r3(cfg.seed + 20);
    const CVec v = random_cvec(r3, n), xi = random_cvec(r3, n);
    int worst = 0;
    for (int comp = 0; comp < 2 * n + 1; ++comp) {
      worst = std::max(worst, laurent_pole_order([&](cplx z) { return conn.A_U(pack_q(v, xi, z))(comp); }));
      worst = std::max(worst, laurent_pole_order([&](cplx z) { return conn.A_V(pack_q(v, xi, z))(comp); }));
    }
    return static_cast<double>(std::max(0, worst - 1));
  });

  const int H = cfg.samples_or(50);
  std::vector<Vec> hr;
  for (int t = 0; t < H; ++t) hr.push_back(twistor_real_point(m, random_cvec(rng, n), random_cvec(rng, n), random_cvec(rng, 1)(0)));
  run_check(rep, "twistor.hermitian.dbar", "dbar log h_U matches its closed form", 1e-9, [&] {
    double worst = 0.0;
    for (std::size_t t = 0; t < std::min<std::size_t>(20, hr.size()); ++t)
      worst = std::max(worst, (dbar_log_hU(m, hr[t], s) - dbar_log_hU_closed(m, hr[t])).cwiseAbs().maxCoeff());
    return worst;
  });
  run_check(rep, "twistor.hermitian.ddbar", "dbar d log h_U = (sum -dz^dzbar + dw^dwbar)/2", 1e-6, [&] {
    const CMatX target = hermitian_target(m);
    double worst = 0.0;
    for (const auto& r : hr) worst = std::max(worst, (ddbar_log_hU(m, r, s) - target).cwiseAbs().maxCoeff());
    return worst;
  });
  run_check(rep, "twistor.hermitian.zero_slice", "at zeta = 0 the curvature is i (omega_1 + dd^c mu) for the rotation of w", 1e-6, [&] {
    const CircleActionSpec spec = CircleActionSpec::uniform(n, 0, 1);
    Rng r4(cfg.seed + 30);
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      const CVec z = random_cvec(r4, n), w = random_cvec(r4, n);
      const Vec r = twistor_real_point(m, z, w, 0.0);
      const CMatX block = ddbar_log_hU(m, r, s).topLeftCorner(4 * n, 4 * n);
      const Mat F = hyperholo_curvature(m, spec, m.pack(z, w), s).matrix();
      worst = std::max(worst, (block - cplx(0.0, 1.0) * F.cast<cplx>()).cwiseAbs().maxCoeff());
    }
    return worst;
  });
  run_check(rep, "twistor.hermitian.reality", "log h_U - log h_V = 2 log |g_UV|", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& x : sm)
      worst = std::max(worst, std::abs(log_hU(x.z, x.w, x.zeta) - log_hV(x.z, x.w, x.zeta) -
                                       2.0 * std::log(std::abs(transition_gUV(smooth_to_U(x.z, x.w, x.zeta))))));
    return worst;
  });
}

/// 0 when the assignment is valid (or correctly absent), 1 otherwise.
inline double sign_rule_residual(const DynkinGraph& g, bool expect_solvable) {
  const auto c = dynkin_signs(g);
  if (c.has_value() != expect_solvable) return 1.0;
  if (!c) return 0.0;
  for (auto [a, b] : g.edges)
    if ((*c)[static_cast<std::size_t>(a)] * (*c)[static_cast<std::size_t>(b)] != -1) return 1.0;
  return 0.0;
}

inline void dynkin_suite(const RunConfig& cfg, Report& rep) {
  struct Entry {
    char type;
    int k;
  };
  std::vector<Entry> all;
  for (int k = 1; k <= 12; ++k) all.push_back({'A', k});
  for (int k = 4; k <= 8; ++k) all.push_back({'D', k});
  for (int k = 6; k <= 8; ++k) all.push_back({'E', k});

  for (const auto& e : all) {
    const std::string tag = std::string(1, e.type) + std::to_string(e.k);
    const bool solvable = e.type != 'A' || e.k % 2 == 1;
    run_check(rep, "dynkin.signs." + tag,
              std::string("extended ") + tag + (solvable ? ": c_i c_j = -1 on every edge" : ": no sign assignment (odd cycle)"), 0.0,
              [&] { return sign_rule_residual(extended_diagram(e.type, e.k), solvable); });
  }
  for (const auto& e : all) {
    const std::string tag = std::string(1, e.type) + std::to_string(e.k);
    run_check(rep, "dynkin.mckay." + tag, "sum of squared null-vector marks equals the group order for " + tag, 0.0, [&] {
      const auto d = mckay_dims(extended_diagram(e.type, e.k));
      int sq = 0;
      for (int x : d) sq += x * x;
      return Measurement(std::abs(sq - group_order(e.type, e.k)), sq);
    });
  }
  run_check(rep, "dynkin.quiver_dim.A1", "quiver space for extended A1 has complex dimension 4", 0.0, [] {
    const int d = quiver_dim(extended_diagram('A', 1));
    return Measurement(std::abs(d - 4), d);
  });
  const DynkinGraph sel = parse_diagram(cfg.diagram);
  run_check(rep, "dynkin.selected." + sel.tag, "sign rule on the selected diagram; value 1 if an assignment exists", 0.0, [&] {
    const auto c = dynkin_signs(sel);
    if (!c) return Measurement(0.0, 0.0);
    double bad = 0.0;
    for (auto [a, b] : sel.edges) bad += (*c)[static_cast<std::size_t>(a)] * (*c)[static_cast<std::size_t>(b)] != -1 ? 1.0 : 0.0;
    return Measurement(bad, 1.0);
  });
}

/// Runs the configured suite; "all" runs every module in a fixed order.
inline Report run_suite(const RunConfig& cfg) {
  cfg.validate();
  Report rep(cfg.suite);
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "flat") flat_suite(cfg, rep);
  if (all || cfg.suite == "bg") bg_suite(cfg, rep);
  if (all || cfg.suite == "gh") gh_suite(cfg, rep);
  if (all || cfg.suite == "quotient") quotient_suite(cfg, rep);
  if (all || cfg.suite == "twistor") twistor_suite(cfg, rep);
  if (all || cfg.suite == "dynkin") dynkin_suite(cfg, rep);
  if (cfg.tol) rep.override_tolerance(*cfg.tol);
  return rep;
}

inline void csv_number(std::ostream& os, double x) { os << std::scientific << std::setprecision(16) << x; }

/// Axis profile of the GH data: x1, V, f, phi.
inline void write_gh_profile(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  const GHConfig g{cfg.centers, cfg.c, 1.0, {}};
  const double span = g.centers.back() - g.centers.front();
  const double lo = g.centers.front() - std::max(2.0, 0.5 * span), hi = g.centers.back() + std::max(2.0, 0.5 * span);
  os << "x1,V,f,phi\n";
  for (const auto& smp : axis_profile(g, lo, hi, cfg.samples_or(401))) {
    csv_number(os, smp.x1);
    for (double v : {smp.V, smp.f, smp.phi}) {
      os << ',';
      csv_number(os, v);
    }
    os << '\n';
  }
}

/// Quotient samples against the fitted GH model: level, distance to each centre, V, fitted V.
inline void write_quotient_scatter(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  using namespace suite_detail;
  const auto levels = quotient_levels(cfg);
  const int count = cfg.samples_or(40);
  if (count < 10) throw ConfigError("quotient profile needs at least 10 samples per level");
  os << "level,dist_a1,dist_a2,V,V_fit\n";
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const auto lf = eh_fit(levels[li], cfg.seed + 100 + li, count);
    if (lf.fit.centers.size() != 2) throw ConvergenceError("fit did not return two centres");
    for (const auto& p : lf.points) {
      const double r1 = (p.x - lf.fit.centers[0]).norm(), r2 = (p.x - lf.fit.centers[1]).norm();
      csv_number(os, levels[li]);
      for (double v : {r1, r2, p.V, 1.0 / r1 + 1.0 / r2}) {
        os << ',';
        csv_number(os, v);
      }
      os << '\n';
    }
  }
}

}  // namespace hyperholo
